"""Artificial mirror neurons: construction from a user profile and phase kinematics.

A neuron carries two rolling cores. The motor core (radius ``r1``, velocity
``v_m``) traces a cycloid; the sensory core (radius ``r2``, velocity ``v_s``)
traces a one-cusp epicycloid. The intention wheel of radius ``R1 = c * r1``
is a hypocycloid drawn around the motor core and has no effect on outputs.

A core rolling without slipping has turned through ``theta = v * t / r``.
Its fuzzy output is the fraction of the current revolution completed:
0 reads as fully true and values approaching 1 as false.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass, replace

from .curves import TWO_PI, CurveSpec, Polyline, sample_curve
from .errors import InvalidParameterError, InvalidProfileError, InvalidResponseError, InvalidTimeError

# Wrapped phases within this relative distance below 2*pi are treated as a completed
# revolution, so exact multiples of 2*pi survive float rounding as response 0.
_WRAP_RTOL = 1e-12


class CoreKind(enum.Enum):
    MOTOR = "motor"
    SENSORY = "sensory"


@dataclass(frozen=True)
class UserProfile:
    reaction_score: int
    emotion_score: int
    age: float

    def __post_init__(self):
        for name in ("reaction_score", "emotion_score"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise InvalidProfileError(f"{name} must be an integer grade, got {value!r}")
            if not 1 <= value <= 5:
                raise InvalidProfileError(f"{name} must be in 1..5, got {value}")
        if isinstance(self.age, bool) or not isinstance(self.age, numbers.Real):
            raise InvalidProfileError(f"age must be a number, got {self.age!r}")
        if not (math.isfinite(self.age) and self.age > 0):
            raise InvalidProfileError(f"age must be positive, got {self.age!r}")


@dataclass(frozen=True)
class NeuronConfig:
    """Constants of the profile-to-neuron map.

    ``intention_coefficient`` scales the motor radius into the intention wheel,
    ``velocity_scale`` is the constant in ``v_m = velocity_scale / age`` and
    ``sensory_velocity_ratio`` gives ``v_s = ratio * v_m``.
    """

    intention_coefficient: float = 3.0
    velocity_scale: float = 100.0
    sensory_velocity_ratio: float = 1.0

    def __post_init__(self):
        if not self.intention_coefficient >= 1:
            raise InvalidParameterError("intention_coefficient must be >= 1")
        if not (math.isfinite(self.velocity_scale) and self.velocity_scale > 0):
            raise InvalidParameterError("velocity_scale must be positive")
        if not (math.isfinite(self.sensory_velocity_ratio) and self.sensory_velocity_ratio > 0):
            raise InvalidParameterError("sensory_velocity_ratio must be positive")


@dataclass(frozen=True)
class AMN:
    id: str
    r1: float
    r2: float
    R1: float
    v_m: float
    v_s: float

    def __post_init__(self):
        for name in ("r1", "r2", "R1", "v_m", "v_s"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"neuron {self.id!r}: {name} must be positive, got {value!r}")

    def radius(self, core: CoreKind) -> float:
        return self.r1 if core is CoreKind.MOTOR else self.r2

    def velocity(self, core: CoreKind) -> float:
        return self.v_m if core is CoreKind.MOTOR else self.v_s

    def with_velocity(self, core: CoreKind, velocity: float) -> AMN:
        if core is CoreKind.MOTOR:
            return replace(self, v_m=velocity)
        return replace(self, v_s=velocity)

    def to_dict(self) -> dict:
        return {"id": self.id, "r1": self.r1, "r2": self.r2, "R1": self.R1, "v_m": self.v_m, "v_s": self.v_s}

    @classmethod
    def from_dict(cls, data: dict) -> AMN:
        return cls(
            id=str(data["id"]),
            r1=float(data["r1"]),
            r2=float(data["r2"]),
            R1=float(data["R1"]),
            v_m=float(data["v_m"]),
            v_s=float(data["v_s"]),
        )


def build_neuron(profile: UserProfile, config: NeuronConfig = NeuronConfig(), id: str = "n1") -> AMN:
    r1 = float(profile.reaction_score)
    v_m = config.velocity_scale / profile.age
    return AMN(
        id=str(id),
        r1=r1,
        r2=float(profile.emotion_score),
        R1=config.intention_coefficient * r1,
        v_m=v_m,
        v_s=config.sensory_velocity_ratio * v_m,
    )


def wrap_phase(theta: float) -> float:
    """Reduce a non-negative phase into ``[0, 2*pi)``."""
    wrapped = theta % TWO_PI
    if TWO_PI - wrapped <= _WRAP_RTOL * max(1.0, theta):
        return 0.0
    return wrapped


def quantize_phase(wrapped: float) -> float:
    """Round a wrapped phase to the nearest whole degree (360 truth levels)."""
    degrees = round(math.degrees(wrapped)) % 360
    return math.radians(degrees)


def unwrapped_phase(amn: AMN, core: CoreKind, t: float) -> float:
    if not t >= 0:
        raise InvalidTimeError(f"time must be non-negative, got {t!r}")
    return (amn.velocity(core) * t) / amn.radius(core)


def phase_to_response(wrapped: float) -> float:
    return wrapped / TWO_PI


def binary_response(amn: AMN, core: CoreKind, t: float, *, quantize_degrees: bool = False) -> float:
    wrapped = wrap_phase(unwrapped_phase(amn, core, t))
    if quantize_degrees:
        wrapped = quantize_phase(wrapped)
    return phase_to_response(wrapped)


def confidence_score(response: float) -> float:
    if not 0.0 <= response < 1.0:
        raise InvalidResponseError(f"response must lie in [0, 1), got {response!r}")
    return (1.0 - response) * 100.0


def neuron_traces(
    amn: AMN, theta_range: tuple[float, float] = (0.0, TWO_PI), n: int = 361
) -> tuple[Polyline, Polyline, Polyline]:
    """Intention hypocycloid, motor cycloid and sensory cardioid of one neuron.

    The sensory trace is reflected below the x-axis.
    """
    start, end = theta_range
    intention = sample_curve(CurveSpec.hypocycloid(amn.r1, amn.R1 / amn.r1), start, end, n)
    motor = sample_curve(CurveSpec.cycloid(amn.r1), start, end, n)
    sensory = sample_curve(CurveSpec.epicycloid(amn.r2, 1.0), start, end, n).mirrored()
    return intention, motor, sensory
