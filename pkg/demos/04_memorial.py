# %% [markdown]
# # Keeping a memorial of races
#
# Races are appended to a line-delimited file with optional feedback labels.
# Stored pools replay exactly, and the memorial can nominate experts per
# request type.

# %%
import random
import tempfile
from pathlib import Path

from mirrornet import AMN, CoreKind, Deadline, MemorialStore, RacePool, RaceRecord, expert_set, stats

rng = random.Random(1)
path = Path(tempfile.mkdtemp()) / "memorial.jsonl"
store = MemorialStore(path)

# %%
for i in range(10):
    pool = RacePool(tuple(AMN(f"u{j}", rng.uniform(1, 5), rng.uniform(1, 5), 3.0, rng.uniform(0.5, 3), 1.0) for j in range(4)))
    record = RaceRecord.from_race(
        "binary" if i % 3 else "market-signal",
        pool,
        Deadline.time(rng.uniform(1, 10)),
        timestamp=f"2026-03-01T10:{i:02d}:00Z",
        correct_label=rng.choice([0, 1]),
    )
    store.append_record(record)

print(stats(store))

# %%
assert all(r.replay() == r.outcome for r in store.load_records())
print(expert_set(store, "binary", Deadline.time(4.0), CoreKind.MOTOR, 3).ids)
print(path.read_text().splitlines()[0][:160], "...")
