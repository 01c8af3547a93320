"""Expert selection, velocity boosting and ideal-outcome prediction.

Every operation takes a ``core`` argument so it serves both the motor
(executive) and sensory (intuitive) channel.

Boosting works on phase congruence: a low performer is sped up by the
smallest factor ``beta >= 1`` that lands its deadline phase on the best
performer's wrapped phase, so after the boost every node reports the best
node's response.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .curves import TWO_PI
from .errors import InvalidParameterError, UnsupportedDeadlineError, ZeroPhaseError
from .neuron import CoreKind, wrap_phase
from .race import (
    Deadline,
    DeadlineKind,
    GroupResponse,
    RacePool,
    as_pool,
    deadline_phase,
    group_response,
    node_state_at_deadline,
)


class ExpertMember(NamedTuple):
    id: str
    response: float
    confidence: float


@dataclass(frozen=True)
class ExpertNetwork:
    core: CoreKind
    deadline: Deadline
    members: tuple[ExpertMember, ...]
    m: int

    @property
    def best(self) -> ExpertMember:
        return self.members[0]

    @property
    def ids(self) -> list[str]:
        return [member.id for member in self.members]

    def to_dict(self) -> dict:
        return {
            "core": self.core.value,
            "deadline": self.deadline.to_dict(),
            "m": self.m,
            "members": [member._asdict() for member in self.members],
        }


@dataclass(frozen=True)
class BoostPlan:
    id: str
    boost_factor: float
    original_velocity: float

    @property
    def boost_percent(self) -> float:
        return (self.boost_factor - 1.0) * 100.0

    @property
    def boosted_velocity(self) -> float:
        return self.boost_factor * self.original_velocity

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "boost_factor": self.boost_factor,
            "boost_percent": self.boost_percent,
            "original_velocity": self.original_velocity,
            "boosted_velocity": self.boosted_velocity,
        }


@dataclass(frozen=True)
class BoostedOutcome:
    expert: ExpertNetwork
    plans: tuple[BoostPlan, ...]
    pre_group: GroupResponse
    post_group: GroupResponse
    boosted_pool: RacePool

    def to_dict(self) -> dict:
        return {
            "expert": self.expert.to_dict(),
            "plans": [plan.to_dict() for plan in self.plans],
            "pre_group": self.pre_group.to_dict(),
            "post_group": self.post_group.to_dict(),
        }


@dataclass(frozen=True)
class IdealResult:
    """Best node at the deadline and the last instant (time or distance) it read fully true."""

    core: CoreKind
    deadline: Deadline
    best_node: str
    best_response: float
    best_confidence: float
    last_truth_instant: float | None

    def to_dict(self) -> dict:
        return {
            "core": self.core.value,
            "deadline": self.deadline.to_dict(),
            "best_node": self.best_node,
            "best_response": self.best_response,
            "best_confidence": self.best_confidence,
            "last_truth_instant": self.last_truth_instant,
        }


def time_response(pool, T: float, core: CoreKind) -> GroupResponse:
    return group_response(pool, Deadline.time(T), core)


def distance_response(pool, D: float, core: CoreKind) -> GroupResponse:
    return group_response(pool, Deadline.distance(D), core)


def net_compete(pool, deadline: Deadline, core: CoreKind, m: int) -> ExpertNetwork:
    """Top ``m`` nodes by ascending response, ties broken by ascending id."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidParameterError(f"expert count m must be a positive integer, got {m!r}")
    pool = as_pool(pool)
    states = [node_state_at_deadline(node, deadline) for node in pool]
    ranked = sorted(states, key=lambda s: (s.response(core), s.id))
    members = tuple(ExpertMember(s.id, s.response(core), s.confidence(core)) for s in ranked[:m])
    return ExpertNetwork(core=core, deadline=deadline, members=members, m=m)


def congruent_boost(theta: float, target: float) -> float:
    """Smallest ``beta >= 1`` with ``beta * theta`` congruent to ``target`` mod 2*pi.

    ``target`` is a wrapped phase in ``[0, 2*pi)``.
    """
    if not theta > 0:
        raise ZeroPhaseError(f"cannot boost a node with zero phase (theta={theta!r})")
    if theta <= target:
        return target / theta
    n = max(0, math.ceil((theta - target) / TWO_PI))
    # ceil on a rounded quotient can be one off either way
    while n > 0 and TWO_PI * (n - 1) + target >= theta:
        n -= 1
    while TWO_PI * n + target < theta:
        n += 1
    return (TWO_PI * n + target) / theta


def _require_time(deadline: Deadline) -> None:
    if deadline.kind is not DeadlineKind.TIME:
        raise UnsupportedDeadlineError("boost requires a time deadline")


def boost_request(pool, deadline: Deadline, core: CoreKind, expert: ExpertNetwork) -> tuple[BoostPlan, ...]:
    _require_time(deadline)
    pool = as_pool(pool)
    if not expert.members:
        raise InvalidParameterError("expert network is empty")
    best = pool.get(expert.best.id)
    target = wrap_phase(deadline_phase(best, deadline, core))
    plans = []
    for node in pool:
        theta = deadline_phase(node, deadline, core)
        beta = 1.0 if node.id == best.id else congruent_boost(theta, target)
        plans.append(BoostPlan(node.id, beta, node.velocity(core)))
    return tuple(plans)


def apply_boosts(pool, plans, core: CoreKind) -> RacePool:
    pool = as_pool(pool)
    by_id = {plan.id: plan for plan in plans}
    boosted = [
        node.with_velocity(core, by_id[node.id].boosted_velocity) if node.id in by_id else node
        for node in pool
    ]
    return pool.replace_nodes(boosted)


def boost_reward(pool, deadline: Deadline, core: CoreKind, m: int) -> BoostedOutcome:
    _require_time(deadline)
    pool = as_pool(pool)
    expert = net_compete(pool, deadline, core, m)
    plans = boost_request(pool, deadline, core, expert)
    boosted = apply_boosts(pool, plans, core)
    return BoostedOutcome(
        expert=expert,
        plans=plans,
        pre_group=group_response(pool, deadline, core),
        post_group=group_response(boosted, deadline, core),
        boosted_pool=boosted,
    )


def _ideal(pool, deadline: Deadline, core: CoreKind) -> IdealResult:
    pool = as_pool(pool)
    winner = net_compete(pool, deadline, core, 1).best
    node = pool.get(winner.id)
    theta = deadline_phase(node, deadline, core)
    revolutions = round((theta - wrap_phase(theta)) / TWO_PI)
    instant = None
    if revolutions > 0:
        if deadline.is_time:
            instant = TWO_PI * revolutions * node.radius(core) / node.velocity(core)
        else:
            instant = TWO_PI * revolutions * node.radius(core)
        instant = min(instant, deadline.value)
    return IdealResult(
        core=core,
        deadline=deadline,
        best_node=winner.id,
        best_response=winner.response,
        best_confidence=winner.confidence,
        last_truth_instant=instant,
    )


def ideal_time(pool, T: float, core: CoreKind) -> IdealResult:
    return _ideal(pool, Deadline.time(T), core)


def ideal_distance(pool, D: float, core: CoreKind) -> IdealResult:
    return _ideal(pool, Deadline.distance(D), core)
