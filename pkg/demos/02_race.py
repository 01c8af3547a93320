# %% [markdown]
# # Racing neurons to a deadline
#
# Eight unit neurons race for a quarter revolution, then a mixed pool is
# raced to both a time and a distance deadline.

# %%
import math

from mirrornet import Deadline, NeuronConfig, RacePool, UserProfile, build_neuron, run_race
from mirrornet.cli import format_outcome

# %%
unit = UserProfile(reaction_score=1, emotion_score=1, age=100)
pool = RacePool(tuple(build_neuron(unit, id=f"n{i}") for i in range(1, 9)))
print(format_outcome(run_race(pool, Deadline.time(math.pi / 2))))

# %% [markdown]
# Profiles set radii from the two grades and velocity from age. With a
# sensory ratio below one, the intuitive channel lags the executive one.

# %%
config = NeuronConfig(sensory_velocity_ratio=0.8)
people = {"alice": (3, 4, 50), "bob": (5, 2, 25), "carol": (2, 2, 70)}
mixed = RacePool(tuple(build_neuron(UserProfile(*p), config, name) for name, p in people.items()))
print(format_outcome(run_race(mixed, Deadline.time(7.25))))

# %% [markdown]
# Under a distance deadline every core has rolled the same arc, so the
# phases depend on radii alone.

# %%
print(format_outcome(run_race(mixed, Deadline.distance(20.0))))
