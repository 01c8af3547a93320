"""Cycloid, epicycloid and hypocycloid geometry.

Every curve is expressed in a local frame: the cycloid starts at the origin
and rolls along the positive x-axis, while the epicycloid and hypocycloid are
centred on the origin with a fixed circle of radius ``R = k * r``.

Closed-form area and arc length are only offered for hypocycloids with an
integer number of cusps ``k >= 3``; other ratios can still be sampled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidParameterError, SingularityError, UnsupportedShapeError

TWO_PI = 2.0 * math.pi

# Cusp exclusion for the cycloid ODE: |theta mod 2pi| below this is singular.
_CUSP_EPS = 1e-12


class Point2D(NamedTuple):
    x: float
    y: float


class CurveFamily(enum.Enum):
    CYCLOID = "cycloid"
    EPICYCLOID = "epicycloid"
    HYPOCYCLOID = "hypocycloid"


@dataclass(frozen=True)
class CurveSpec:
    """A rolling circle of radius ``r``; ``k = R / r`` is ignored for cycloids."""

    family: CurveFamily
    r: float
    k: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise InvalidParameterError(f"rolling radius must be positive, got {self.r!r}")
        if self.family is CurveFamily.CYCLOID:
            return
        if not (math.isfinite(self.k) and self.k > 0):
            raise InvalidParameterError(f"radius ratio k must be positive, got {self.k!r}")
        if self.family is CurveFamily.HYPOCYCLOID and self.k <= 1:
            raise InvalidParameterError(
                f"hypocycloid needs k > 1 (rolling circle inside the fixed circle), got {self.k!r}"
            )

    @property
    def R(self) -> float:
        """Fixed-circle radius ``k * r``."""
        return self.k * self.r

    @classmethod
    def cycloid(cls, r: float) -> CurveSpec:
        return cls(CurveFamily.CYCLOID, r)

    @classmethod
    def epicycloid(cls, r: float, k: float) -> CurveSpec:
        return cls(CurveFamily.EPICYCLOID, r, k)

    @classmethod
    def hypocycloid(cls, r: float, k: float) -> CurveSpec:
        return cls(CurveFamily.HYPOCYCLOID, r, k)


@dataclass(frozen=True, eq=False)
class Polyline:
    """Sampled curve; ``thetas``, ``xs`` and ``ys`` are parallel 1-D arrays."""

    thetas: np.ndarray
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        if not (len(self.thetas) == len(self.xs) == len(self.ys)):
            raise InvalidParameterError("polyline arrays must have equal length")
        if len(self.thetas) < 2:
            raise InvalidParameterError("polyline needs at least two points")
        if np.any(np.diff(self.thetas) <= 0):
            raise InvalidParameterError("polyline thetas must be strictly increasing")

    @property
    def theta_start(self) -> float:
        return float(self.thetas[0])

    @property
    def theta_end(self) -> float:
        return float(self.thetas[-1])

    @property
    def points(self) -> list[Point2D]:
        return [Point2D(float(x), float(y)) for x, y in zip(self.xs, self.ys)]

    def __len__(self) -> int:
        return len(self.thetas)

    def mirrored(self) -> Polyline:
        """Reflection across the x-axis."""
        return Polyline(self.thetas, self.xs, -self.ys)


def _check_radius(r: float) -> None:
    if not (math.isfinite(r) and r > 0):
        raise InvalidParameterError(f"radius must be positive, got {r!r}")


def cycloid_point(r: float, theta: float) -> Point2D:
    _check_radius(r)
    # 1 - cos(theta) == 2 sin^2(theta/2); the half-angle form keeps precision near cusps.
    s = math.sin(0.5 * theta)
    return Point2D(r * (theta - math.sin(theta)), 2.0 * r * s * s)


def cycloid_center(r: float, theta: float) -> Point2D:
    _check_radius(r)
    return Point2D(r * theta, r)


def cycloid_x_of_y(r: float, y: float) -> float:
    """Inverse of the first half-arch (``0 <= theta <= pi``) of the cycloid.

    Computes ``r * arccos(1 - y/r) - sqrt(y * (2r - y))``.
    """
    _check_radius(r)
    if not (0.0 <= y <= 2.0 * r):
        raise DomainError(f"y must lie in [0, 2r] = [0, {2.0 * r}], got {y!r}")
    # arccos(1 - u) == 2 arcsin(sqrt(u/2)); the arcsin branch is better conditioned for small y.
    if y <= r:
        angle = 2.0 * math.asin(math.sqrt(y / (2.0 * r)))
    else:
        angle = math.acos(1.0 - y / r)
    return r * angle - math.sqrt(y * (2.0 * r - y))


def cycloid_ode_residual(r: float, theta: float) -> float:
    """``(dy/dx)^2 - (2r/y - 1)`` evaluated on the parametric cycloid."""
    _check_radius(r)
    wrapped = math.fmod(theta, TWO_PI)
    if min(abs(wrapped), TWO_PI - abs(wrapped)) < _CUSP_EPS:
        raise SingularityError(f"theta={theta!r} is a cusp; dy/dx is unbounded there")
    y = cycloid_point(r, theta).y
    slope = math.sin(theta) / (y / r)
    return slope * slope - (2.0 * r / y - 1.0)


def _epicycloid_xy(r: float, k: float, theta):
    a = r * (k + 1.0)
    return (
        a * np.cos(theta) - r * np.cos((k + 1.0) * theta),
        a * np.sin(theta) - r * np.sin((k + 1.0) * theta),
    )


def _hypocycloid_xy(r: float, k: float, theta):
    a = r * (k - 1.0)
    return (
        a * np.cos(theta) + r * np.cos((k - 1.0) * theta),
        a * np.sin(theta) - r * np.sin((k - 1.0) * theta),
    )


def _cycloid_xy(r: float, theta):
    s = np.sin(0.5 * theta)
    return r * (theta - np.sin(theta)), 2.0 * r * s * s


def _require(spec: CurveSpec, family: CurveFamily) -> None:
    if not isinstance(spec, CurveSpec) or spec.family is not family:
        raise InvalidParameterError(f"expected a {family.value} spec, got {spec!r}")


def epicycloid_point(spec: CurveSpec, theta: float) -> Point2D:
    _require(spec, CurveFamily.EPICYCLOID)
    x, y = _epicycloid_xy(spec.r, spec.k, theta)
    return Point2D(float(x), float(y))


def hypocycloid_point(spec: CurveSpec, theta: float) -> Point2D:
    _require(spec, CurveFamily.HYPOCYCLOID)
    x, y = _hypocycloid_xy(spec.r, spec.k, theta)
    return Point2D(float(x), float(y))


def _closed_cusp_count(spec: CurveSpec) -> int:
    _require(spec, CurveFamily.HYPOCYCLOID)
    k = spec.k
    if k != math.floor(k) or k < 3:
        raise UnsupportedShapeError(
            f"closed-form measures need an integer cusp count k >= 3, got k={k!r}"
        )
    return int(k)


def hypocycloid_area(spec: CurveSpec) -> float:
    """Area enclosed by a ``k``-cusped hypocycloid: ``(k-1)(k-2) pi r^2``."""
    k = _closed_cusp_count(spec)
    return (k - 1) * (k - 2) * math.pi * spec.r**2


def hypocycloid_arclength(spec: CurveSpec) -> float:
    """Length of one closed traversal: ``8 (k-1) r``."""
    k = _closed_cusp_count(spec)
    return 8.0 * (k - 1) * spec.r


def evaluate(spec: CurveSpec, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised point evaluation for any family."""
    thetas = np.asarray(thetas, dtype=float)
    if spec.family is CurveFamily.CYCLOID:
        return _cycloid_xy(spec.r, thetas)
    if spec.family is CurveFamily.EPICYCLOID:
        return _epicycloid_xy(spec.r, spec.k, thetas)
    return _hypocycloid_xy(spec.r, spec.k, thetas)


def sample_curve(spec: CurveSpec, theta_start: float, theta_end: float, n: int) -> Polyline:
    if n < 2:
        raise InvalidParameterError(f"need at least 2 samples, got {n}")
    if not theta_end > theta_start:
        raise InvalidParameterError("theta_end must exceed theta_start")
    thetas = np.linspace(theta_start, theta_end, n)
    xs, ys = evaluate(spec, thetas)
    return Polyline(thetas, xs, ys)
