# %% [markdown]
# # Expert networks and velocity boosts
#
# Select the best performers, then compute how much each low performer must
# speed up so it finishes in the best node's state.

# %%
import math
import random

from mirrornet import AMN, CoreKind, Deadline, RacePool, boost_reward, ideal_time, net_compete

rng = random.Random(7)
pool = RacePool(
    tuple(
        AMN(f"n{i}", r1=rng.uniform(1, 5), r2=rng.uniform(1, 5), R1=3.0, v_m=rng.uniform(0.5, 4), v_s=rng.uniform(0.5, 4))
        for i in range(6)
    )
)
deadline = Deadline.time(5.0)

# %%
expert = net_compete(pool, deadline, CoreKind.MOTOR, 3)
for member in expert.members:
    print(f"{member.id}: response {member.response:.4f}, confidence {member.confidence:.1f}%")

# %%
out = boost_reward(pool, deadline, CoreKind.MOTOR, 3)
for plan in out.plans:
    print(f"{plan.id}: beta={plan.boost_factor:.4f} (+{plan.boost_percent:.2f}%)")
print(f"group response {out.pre_group.group_response:.4f} -> {out.post_group.group_response:.4f}")

# %% [markdown]
# The ideal prediction reports the best node and the last instant before the
# deadline at which it read fully true.

# %%
ideal = ideal_time(pool, deadline.value, CoreKind.MOTOR)
print(ideal)
print("revolution period of best node:", 2 * math.pi * pool.get(ideal.best_node).r1 / pool.get(ideal.best_node).v_m)
