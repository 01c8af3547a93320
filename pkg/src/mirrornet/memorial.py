"""Append-only store of race records and decision feedback.

The store is a UTF-8 text file holding one JSON object per line::

    {"version": 1, "id": 3, "timestamp": "...", "request_type": "binary",
     "pool": {...}, "deadline": {"time": 1.5}, "outcome": {...},
     "user_decision": 1, "correct_label": 0}

``user_decision`` and ``correct_label`` may be absent. Keys this version
does not know are kept in ``RaceRecord.extra`` and written back unchanged.
Floats are serialised with ``repr`` precision, so a stored pool replays to a
bit-identical outcome.
"""

from __future__ import annotations

import json
import math
import os
import threading
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

from .consensus import ExpertNetwork, net_compete
from .errors import DecodeError, IntegrityError, NotFoundError, StorageError
from .neuron import CoreKind
from .race import Deadline, RaceOutcome, RacePool, decision_loss, prescribe, run_race

SCHEMA_VERSION = 1

_KNOWN_KEYS = frozenset(
    {"version", "id", "timestamp", "request_type", "pool", "deadline", "outcome", "user_decision", "correct_label"}
)


def _check_label(name: str, value) -> None:
    if value is not None and (isinstance(value, bool) or value not in (0, 1)):
        raise IntegrityError(f"{name} must be 0, 1 or absent, got {value!r}")


@dataclass(frozen=True)
class RaceRecord:
    request_type: str
    pool: RacePool
    deadline: Deadline
    outcome: RaceOutcome
    timestamp: str | None = None
    user_decision: int | None = None
    correct_label: int | None = None
    id: int | None = None
    extra: dict = field(default_factory=dict, compare=True)

    @classmethod
    def from_race(cls, request_type: str, pool: RacePool, deadline: Deadline, **kwargs) -> RaceRecord:
        quantize = kwargs.pop("quantize_degrees", False)
        return cls(request_type, pool, deadline, run_race(pool, deadline, quantize_degrees=quantize), **kwargs)

    def replay(self) -> RaceOutcome:
        return run_race(self.pool, self.deadline, quantize_degrees=self.outcome.quantize_degrees)

    def validate(self) -> None:
        """Structural consistency between pool, deadline, outcome and labels."""
        outcome = self.outcome
        if outcome.deadline != self.deadline:
            raise IntegrityError("outcome deadline differs from record deadline")
        if [s.id for s in outcome.states] != [n.id for n in self.pool.nodes]:
            raise IntegrityError("outcome node states do not match the pool")
        for group, core in ((outcome.group_motor, CoreKind.MOTOR), (outcome.group_sensory, CoreKind.SENSORY)):
            if group.core is not core or group.n != len(self.pool):
                raise IntegrityError(f"{core.value} group response is inconsistent with the pool")
        values = [outcome.prescription_confidence, outcome.group_motor.group_response]
        for s in outcome.states:
            values.extend((s.response_motor, s.response_sensory))
        if not all(math.isfinite(v) for v in values):
            raise IntegrityError("outcome contains non-finite values")
        if not all(0.0 <= s.response_motor < 1.0 and 0.0 <= s.response_sensory < 1.0 for s in outcome.states):
            raise IntegrityError("node responses must lie in [0, 1)")
        if prescribe(outcome.group_motor)[0] is not outcome.prescription:
            raise IntegrityError("prescription disagrees with the motor group response")
        _check_label("user_decision", self.user_decision)
        _check_label("correct_label", self.correct_label)
        if not isinstance(self.request_type, str) or not self.request_type:
            raise IntegrityError("request_type must be a non-empty string")

    def to_dict(self) -> dict:
        data = dict(self.extra)
        data.update(
            version=SCHEMA_VERSION,
            id=self.id,
            timestamp=self.timestamp,
            request_type=self.request_type,
            pool=self.pool.to_dict(),
            deadline=self.deadline.to_dict(),
            outcome=self.outcome.to_dict(),
        )
        if self.user_decision is not None:
            data["user_decision"] = self.user_decision
        if self.correct_label is not None:
            data["correct_label"] = self.correct_label
        return data

    @classmethod
    def from_dict(cls, data: dict) -> RaceRecord:
        version = data.get("version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported record version {version!r}")
        return cls(
            id=data.get("id"),
            timestamp=data.get("timestamp"),
            request_type=data["request_type"],
            pool=RacePool.from_dict(data["pool"]),
            deadline=Deadline.from_dict(data["deadline"]),
            outcome=RaceOutcome.from_dict(data["outcome"]),
            user_decision=data.get("user_decision"),
            correct_label=data.get("correct_label"),
            extra={k: v for k, v in data.items() if k not in _KNOWN_KEYS},
        )


def dumps_record(record: RaceRecord) -> str:
    return json.dumps(record.to_dict(), ensure_ascii=False, allow_nan=False, separators=(",", ":"))


class MemorialStore:
    """Line-delimited record file with one writer per process.

    A missing file reads as an empty store and is created on first append.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def _read_lines(self):
        try:
            with open(self.path, encoding="utf-8") as fh:
                yield from enumerate(fh, start=1)
        except FileNotFoundError:
            return
        except OSError as exc:
            raise StorageError(f"cannot read memorial {self.path}: {exc}") from exc

    def load_records(self, request_type: str | None = None) -> list[RaceRecord]:
        records = []
        for lineno, line in self._read_lines():
            if not line.strip():
                continue
            try:
                record = RaceRecord.from_dict(json.loads(line))
            except (ValueError, KeyError, TypeError, AttributeError) as exc:
                raise DecodeError(f"corrupt record in {self.path}: {exc}", lineno) from exc
            if request_type is None or record.request_type == request_type:
                records.append(record)
        return records

    def _last_id(self) -> int:
        last = 0
        for record in self.load_records():
            last = max(last, record.id or 0)
        return last

    def append_record(self, record: RaceRecord) -> int:
        """Validate, assign the next id if unset, and durably append."""
        record.validate()
        with self._lock:
            last = self._last_id()
            if record.id is None:
                record = replace(record, id=last + 1)
            elif isinstance(record.id, bool) or not isinstance(record.id, int) or record.id <= last:
                raise IntegrityError(f"record id {record.id!r} is not greater than the last id {last}")
            line = dumps_record(record) + "\n"
            try:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line)
                    fh.flush()
                    os.fsync(fh.fileno())
            except OSError as exc:
                raise StorageError(f"cannot append to memorial {self.path}: {exc}") from exc
        return record.id


@dataclass(frozen=True)
class MemorialStats:
    count: int
    per_type: dict[str, int]
    mean_loss: float | None
    labeled: int

    def to_dict(self) -> dict:
        return {"count": self.count, "per_type": dict(self.per_type), "labeled": self.labeled, "mean_loss": self.mean_loss}


def stats(store: MemorialStore) -> MemorialStats:
    records = store.load_records()
    losses = [
        decision_loss(r.outcome.group_motor.group_response, r.correct_label)
        for r in records
        if r.correct_label is not None
    ]
    per_type = Counter(r.request_type for r in records)
    return MemorialStats(
        count=len(records),
        per_type=dict(sorted(per_type.items())),
        mean_loss=math.fsum(losses) / len(losses) if losses else None,
        labeled=len(losses),
    )


def expert_set(store: MemorialStore, request_type: str, deadline: Deadline, core: CoreKind, m: int) -> ExpertNetwork:
    """Experts among every neuron ever raced for ``request_type``.

    A node id seen in several records contributes its most recent snapshot.
    """
    records = store.load_records(request_type)
    if not records:
        raise NotFoundError(f"no records for request type {request_type!r}")
    latest = {}
    for record in records:
        for node in record.pool.nodes:
            latest[node.id] = node
    return net_compete(RacePool(tuple(latest.values())), deadline, core, m)

