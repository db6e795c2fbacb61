"""Geometry of a benign point a, its perturbation b and a reference point c."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateReferenceError

UNIT_TOL = 1e-9
BOUNDARY_RTOL = 1e-9


class Direction(str, Enum):
    TOWARD = "toward"
    AWAY = "away"
    BOUNDARY = "boundary"

    def __str__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class PerturbationTriple:
    """Points a, b, c with x = |a-c|, y = |b-c|, |b-a| = delta*x, and the
    angle theta in [0, pi] between b-a and c-a."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    x: float
    y: float
    delta: float
    theta: float

    @property
    def delta_x(self) -> float:
        return self.delta * self.x

    def law_of_cosines_y(self) -> float:
        x, d = self.x, self.delta
        return math.sqrt(max(d * d * x * x + x * x - 2 * d * x * x * math.cos(self.theta), 0.0))


def _angle(u, v) -> float:
    cos = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
    return math.acos(min(1.0, max(-1.0, cos)))


def make_triple(a, direction, delta: float, c) -> PerturbationTriple:
    """Place ``b = a + delta * |a - c| * direction`` and measure the geometry."""
    a = np.asarray(a, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    direction = np.asarray(direction, dtype=np.float64)
    if a.shape != c.shape or direction.shape != a.shape:
        raise ValueError("a, c and direction must share one shape")
    norm = float(np.linalg.norm(direction))
    if norm == 0:
        raise ValueError("direction is the zero vector")
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"direction must be unit length, got norm {norm}")
    if not delta > 0:
        raise ValueError("delta must be positive")
    x = float(np.linalg.norm(a - c))
    if x == 0:
        raise DegenerateReferenceError("reference point c coincides with a")
    b = a + (delta * x) * direction
    y = float(np.linalg.norm(b - c))
    theta = _angle(direction, c - a)
    return PerturbationTriple(a, b, c, x, y, float(delta), theta)


def triple_from_points(a, b, c) -> PerturbationTriple:
    a, b, c = (np.asarray(p, dtype=np.float64) for p in (a, b, c))
    x = float(np.linalg.norm(a - c))
    if x == 0:
        raise DegenerateReferenceError("reference point c coincides with a")
    step = float(np.linalg.norm(b - a))
    if step == 0:
        raise ValueError("b coincides with a")
    return PerturbationTriple(a, b, c, x, float(np.linalg.norm(b - c)), step / x, _angle(b - a, c - a))


def classify(delta: float, theta: float, x: float = 1.0, y: float | None = None) -> Direction:
    """Direction of a perturbation from (delta, theta).

    away when ``delta > 2 cos(theta)``, toward when ``delta < 2 cos(theta)``;
    when ``y`` is given, points with ``|y - x| <= 1e-9 x`` are boundary.
    """
    if y is not None and abs(y - x) <= BOUNDARY_RTOL * x:
        return Direction.BOUNDARY
    two_cos = 2.0 * math.cos(theta)
    if delta > two_cos:
        return Direction.AWAY
    if delta < two_cos and -math.pi / 2 < theta < math.pi / 2:
        return Direction.TOWARD
    return Direction.BOUNDARY


def direction_class(triple: PerturbationTriple) -> Direction:
    return classify(triple.delta, triple.theta, triple.x, triple.y)
