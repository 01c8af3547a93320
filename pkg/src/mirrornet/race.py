"""Racing a pool of neurons to a time or distance deadline.

Each node rolls independently. At the deadline its wrapped phases fix a
binary response and confidence per core; the pool's group response is the
arithmetic mean of member responses. The prescription reads the motor
group: YES when the group response is strictly below one half.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyPoolError, InvalidLabelError, InvalidParameterError, InvalidResponseError
from .neuron import AMN, CoreKind, confidence_score, phase_to_response, quantize_phase, wrap_phase


class DeadlineKind(enum.Enum):
    TIME = "time"
    DISTANCE = "distance"


@dataclass(frozen=True)
class Deadline:
    kind: DeadlineKind
    value: float

    def __post_init__(self):
        if not isinstance(self.kind, DeadlineKind):
            raise InvalidParameterError(f"unknown deadline kind {self.kind!r}")
        if not (math.isfinite(self.value) and self.value > 0):
            raise InvalidParameterError(f"deadline must be positive, got {self.value!r}")

    @classmethod
    def time(cls, seconds: float) -> Deadline:
        return cls(DeadlineKind.TIME, float(seconds))

    @classmethod
    def distance(cls, length: float) -> Deadline:
        return cls(DeadlineKind.DISTANCE, float(length))

    @property
    def is_time(self) -> bool:
        return self.kind is DeadlineKind.TIME

    def to_dict(self) -> dict:
        return {self.kind.value: self.value}

    @classmethod
    def from_dict(cls, data: dict) -> Deadline:
        if len(data) != 1:
            raise InvalidParameterError(f"deadline needs exactly one of 'time'/'distance', got {sorted(data)}")
        (key, value), = data.items()
        try:
            kind = DeadlineKind(key)
        except ValueError:
            raise InvalidParameterError(f"unknown deadline kind {key!r}") from None
        return cls(kind, float(value))


@dataclass(frozen=True)
class RacePool:
    """Memorial neurons plus one request neuron (index ``request_index``, default last)."""

    nodes: tuple[AMN, ...]
    request_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if not self.nodes:
            raise EmptyPoolError("race pool has no neurons")
        ids = [node.id for node in self.nodes]
        if len(set(ids)) != len(ids):
            raise InvalidParameterError(f"duplicate node ids in pool: {ids}")
        if self.request_index is None:
            object.__setattr__(self, "request_index", len(self.nodes) - 1)
        if not 0 <= self.request_index < len(self.nodes):
            raise InvalidParameterError(f"request_index {self.request_index} out of range")

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    @property
    def request(self) -> AMN:
        return self.nodes[self.request_index]

    def get(self, node_id: str) -> AMN:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def replace_nodes(self, nodes: Iterable[AMN]) -> RacePool:
        return RacePool(tuple(nodes), self.request_index)

    def to_dict(self) -> dict:
        return {"request_index": self.request_index, "nodes": [node.to_dict() for node in self.nodes]}

    @classmethod
    def from_dict(cls, data: dict) -> RacePool:
        return cls(tuple(AMN.from_dict(n) for n in data["nodes"]), int(data["request_index"]))


def as_pool(nodes) -> RacePool:
    if isinstance(nodes, RacePool):
        return nodes
    nodes = tuple(nodes)
    if not nodes:
        raise EmptyPoolError("race pool has no neurons")
    return RacePool(nodes)


@dataclass(frozen=True)
class NodeState:
    id: str
    elapsed: float
    distance: float
    wrapped_phase_motor: float
    wrapped_phase_sensory: float
    response_motor: float
    response_sensory: float
    confidence_motor: float
    confidence_sensory: float

    def wrapped_phase(self, core: CoreKind) -> float:
        return self.wrapped_phase_motor if core is CoreKind.MOTOR else self.wrapped_phase_sensory

    def response(self, core: CoreKind) -> float:
        return self.response_motor if core is CoreKind.MOTOR else self.response_sensory

    def confidence(self, core: CoreKind) -> float:
        return self.confidence_motor if core is CoreKind.MOTOR else self.confidence_sensory

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, data: dict) -> NodeState:
        return cls(id=str(data["id"]), **{k: float(data[k]) for k in _STATE_FLOATS})


_STATE_FLOATS = (
    "elapsed",
    "distance",
    "wrapped_phase_motor",
    "wrapped_phase_sensory",
    "response_motor",
    "response_sensory",
    "confidence_motor",
    "confidence_sensory",
)


@dataclass(frozen=True)
class GroupResponse:
    core: CoreKind
    mean_wrapped_phase: float
    group_response: float
    group_confidence: float
    n: int

    def to_dict(self) -> dict:
        return {
            "core": self.core.value,
            "mean_wrapped_phase": self.mean_wrapped_phase,
            "group_response": self.group_response,
            "group_confidence": self.group_confidence,
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, data: dict) -> GroupResponse:
        return cls(
            core=CoreKind(data["core"]),
            mean_wrapped_phase=float(data["mean_wrapped_phase"]),
            group_response=float(data["group_response"]),
            group_confidence=float(data["group_confidence"]),
            n=int(data["n"]),
        )


class Prescription(enum.Enum):
    YES = "yes"
    NO = "no"


@dataclass(frozen=True)
class RaceOutcome:
    deadline: Deadline
    states: tuple[NodeState, ...]
    group_motor: GroupResponse
    group_sensory: GroupResponse
    prescription: Prescription
    prescription_confidence: float
    quantize_degrees: bool = field(default=False)

    def state(self, node_id: str) -> NodeState:
        for s in self.states:
            if s.id == node_id:
                return s
        raise KeyError(node_id)

    def group(self, core: CoreKind) -> GroupResponse:
        return self.group_motor if core is CoreKind.MOTOR else self.group_sensory

    def to_dict(self) -> dict:
        return {
            "deadline": self.deadline.to_dict(),
            "states": [s.to_dict() for s in self.states],
            "group_motor": self.group_motor.to_dict(),
            "group_sensory": self.group_sensory.to_dict(),
            "prescription": self.prescription.value,
            "prescription_confidence": self.prescription_confidence,
            "quantize_degrees": self.quantize_degrees,
        }

    @classmethod
    def from_dict(cls, data: dict) -> RaceOutcome:
        return cls(
            deadline=Deadline.from_dict(data["deadline"]),
            states=tuple(NodeState.from_dict(s) for s in data["states"]),
            group_motor=GroupResponse.from_dict(data["group_motor"]),
            group_sensory=GroupResponse.from_dict(data["group_sensory"]),
            prescription=Prescription(data["prescription"]),
            prescription_confidence=float(data["prescription_confidence"]),
            quantize_degrees=bool(data.get("quantize_degrees", False)),
        )


def elapsed_and_distance(amn: AMN, deadline: Deadline) -> tuple[float, float]:
    if deadline.is_time:
        return deadline.value, amn.v_m * deadline.value
    return deadline.value / amn.v_m, deadline.value


def deadline_phase(amn: AMN, deadline: Deadline, core: CoreKind) -> float:
    """Unwrapped phase of one core at the deadline.

    Under a distance deadline each core has rolled the same arc ``D`` and
    the phase is ``D / r`` whatever the velocity.
    """
    if deadline.is_time:
        return (amn.velocity(core) * deadline.value) / amn.radius(core)
    return deadline.value / amn.radius(core)


def _wrapped(amn: AMN, deadline: Deadline, core: CoreKind, quantize_degrees: bool) -> float:
    phase = wrap_phase(deadline_phase(amn, deadline, core))
    return quantize_phase(phase) if quantize_degrees else phase


def node_state_at_deadline(amn: AMN, deadline: Deadline, *, quantize_degrees: bool = False) -> NodeState:
    elapsed, distance = elapsed_and_distance(amn, deadline)
    phase_m = _wrapped(amn, deadline, CoreKind.MOTOR, quantize_degrees)
    phase_s = _wrapped(amn, deadline, CoreKind.SENSORY, quantize_degrees)
    resp_m = phase_to_response(phase_m)
    resp_s = phase_to_response(phase_s)
    return NodeState(
        id=amn.id,
        elapsed=elapsed,
        distance=distance,
        wrapped_phase_motor=phase_m,
        wrapped_phase_sensory=phase_s,
        response_motor=resp_m,
        response_sensory=resp_s,
        confidence_motor=confidence_score(resp_m),
        confidence_sensory=confidence_score(resp_s),
    )


def aggregate(states: Sequence[NodeState], core: CoreKind) -> GroupResponse:
    if not states:
        raise EmptyPoolError("cannot aggregate an empty pool")
    n = len(states)
    mean_response = math.fsum(s.response(core) for s in states) / n
    return GroupResponse(
        core=core,
        mean_wrapped_phase=math.fsum(s.wrapped_phase(core) for s in states) / n,
        group_response=mean_response,
        group_confidence=(1.0 - mean_response) * 100.0,
        n=n,
    )


def group_response(pool, deadline: Deadline, core: CoreKind, *, quantize_degrees: bool = False) -> GroupResponse:
    pool = as_pool(pool)
    states = [node_state_at_deadline(node, deadline, quantize_degrees=quantize_degrees) for node in pool]
    return aggregate(states, core)


def prescribe(group_motor: GroupResponse) -> tuple[Prescription, float]:
    if group_motor.group_response < 0.5:
        return Prescription.YES, group_motor.group_confidence
    return Prescription.NO, 100.0 - group_motor.group_confidence


def run_race(pool, deadline: Deadline, *, quantize_degrees: bool = False) -> RaceOutcome:
    pool = as_pool(pool)
    states = tuple(node_state_at_deadline(node, deadline, quantize_degrees=quantize_degrees) for node in pool)
    group_motor = aggregate(states, CoreKind.MOTOR)
    prescription, confidence = prescribe(group_motor)
    return RaceOutcome(
        deadline=deadline,
        states=states,
        group_motor=group_motor,
        group_sensory=aggregate(states, CoreKind.SENSORY),
        prescription=prescription,
        prescription_confidence=confidence,
        quantize_degrees=quantize_degrees,
    )


def decision_loss(predicted: float, correct: int) -> float:
    if isinstance(correct, bool) or correct not in (0, 1):
        raise InvalidLabelError(f"correct decision must be 0 or 1, got {correct!r}")
    if not 0.0 <= predicted < 1.0:
        raise InvalidResponseError(f"predicted response must lie in [0, 1), got {predicted!r}")
    return abs(predicted - correct)
