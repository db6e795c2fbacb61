"""Lower and upper bounds on the LID of a perturbed point.

With ``N = ln(F_b(y) / F_b(delta x))`` and ``u = y / (delta x)`` the general
bounds are ``N / ln(u + eta) <= LID(b) <= N / ln(u - eta)``.  The directional
variants replace ``u`` by ``1 / delta``, the value of ``u`` at the
away/toward boundary ``cos(theta) = delta / 2``.

Feasible eta satisfies ``0 < eta < min(u - 1, LID(b) ln(phi) / |ln(1/u)|)``
with ``phi = min((y + delta x eta) / y, y / (y - delta x eta))``; the
directional variants also need ``1 - 1/delta < eta < 1/delta - 1``.  The
unknown LID(b) in the cap is replaced by a proxy, normally the MLE estimate.

The bounds are asymptotic in the sample size.  No minimum size is computed;
callers are expected to work with n in the thousands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DegenerateGeometryError,
    DomainError,
    EmptyEtaIntervalError,
    InfeasibleEtaError,
    ZeroProbabilityError,
)
from .geometry import Direction, PerturbationTriple, direction_class

ETA_MIN = 1e-6
DEFAULT_ETA_GRID = 50
DENOM_EPS = 1e-12
CHAIN_RTOL = 1e-9


class Variant(str, Enum):
    THEOREM2 = "theorem2"
    THEOREM3 = "theorem3"
    THEOREM3_AWAY = "theorem3-away"
    THEOREM3_TOWARD = "theorem3-toward"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EtaFeasibility:
    eta: float
    phi: float
    feasible: bool
    cap1: float
    cap2: float
    interval: tuple[float, float] | None = None


@dataclass(frozen=True, eq=False)
class BoundResult:
    lower: float
    upper: float
    eta: float
    ratio_log: float
    geometry: PerturbationTriple
    variant: Variant
    unstable: bool = False
    # both denominators share the numerator's sign
    consistent: bool = True


def phi(y: float, delta_x: float, eta: float) -> float:
    """``min((y + delta_x eta) / y, y / (y - delta_x eta))``."""
    if not (y > 0 and delta_x > 0):
        raise ValueError("y and delta_x must be positive")
    if not eta > 0:
        raise ValueError("eta must be positive")
    if delta_x * eta >= y:
        raise InfeasibleEtaError(f"delta_x * eta = {delta_x * eta} >= y = {y}")
    return min((y + delta_x * eta) / y, y / (y - delta_x * eta))


def _distances(triple_or_y, delta_x=None):
    if isinstance(triple_or_y, PerturbationTriple):
        return triple_or_y.y, triple_or_y.delta_x, triple_or_y.delta
    return float(triple_or_y), float(delta_x), None


def eta_feasibility(y: float, delta_x: float, eta: float, lid_proxy: float,
                    delta: float | None = None) -> EtaFeasibility:
    """Check one eta against both caps, plus the directional interval when ``delta`` is given."""
    cap1 = y / delta_x - 1.0
    interval = None
    if delta is not None:
        interval = (1.0 - 1.0 / delta, 1.0 / delta - 1.0)
    if not 0 < eta < cap1:
        return EtaFeasibility(eta, float("nan"), False, cap1, float("nan"), interval)
    p = phi(y, delta_x, eta)
    cap2 = lid_proxy * math.log(p) / abs(math.log(delta_x / y))
    feasible = eta < cap2
    if interval is not None:
        feasible = feasible and interval[0] < eta < interval[1]
    return EtaFeasibility(eta, p, feasible, cap1, cap2, interval)


def eta_grid(triple: PerturbationTriple, lid_proxy: float, variant=Variant.THEOREM2,
             grid_size: int = DEFAULT_ETA_GRID) -> list[EtaFeasibility]:
    """Log-spaced eta candidates strictly inside ``(1e-6, y/(delta x) - 1)``.

    Returns an empty list when ``y <= delta x`` (no admissible eta).
    """
    if not lid_proxy > 0:
        raise ValueError("lid_proxy must be positive")
    if grid_size < 1:
        raise ValueError("grid_size must be >= 1")
    y, delta_x = triple.y, triple.delta_x
    if abs(y - delta_x) <= DENOM_EPS * y:
        raise DegenerateGeometryError("y == delta*x; the distance log-ratio vanishes")
    cap1 = y / delta_x - 1.0
    if cap1 <= ETA_MIN:
        return []
    directional = Variant(variant) is not Variant.THEOREM2
    etas = np.geomspace(ETA_MIN, cap1, grid_size + 2)[1:-1]
    return [eta_feasibility(y, delta_x, float(e), lid_proxy, triple.delta if directional else None)
            for e in etas]


def _cdf_pair(cdf, y, delta_x):
    fn = getattr(cdf, "cdf", cdf)
    f_y, f_dx = float(fn(y)), float(fn(delta_x))
    if f_dx <= 0:
        raise ZeroProbabilityError(f"F_b(delta x) = {f_dx}")
    if f_y <= 0:
        raise ZeroProbabilityError(f"F_b(y) = {f_y}")
    return f_y, f_dx


def _sandwich(ratio_log, lo_arg, hi_arg):
    if lo_arg <= 0 or hi_arg <= 0:
        raise DomainError(f"log argument not positive ({lo_arg}, {hi_arg})")
    lo_den, hi_den = math.log(lo_arg), math.log(hi_arg)
    unstable = abs(lo_den) < DENOM_EPS or abs(hi_den) < DENOM_EPS
    lower = ratio_log / lo_den if lo_den != 0 else math.copysign(math.inf, ratio_log)
    upper = ratio_log / hi_den if hi_den != 0 else math.copysign(math.inf, ratio_log)
    sign = np.sign(ratio_log)
    consistent = bool(sign != 0 and np.sign(lo_den) == sign and np.sign(hi_den) == sign)
    return lower, upper, unstable, consistent


def theorem2_bounds(triple: PerturbationTriple, cdf, eta: float) -> BoundResult:
    """``N / ln(y/(delta x) + eta) <= LID(b) <= N / ln(y/(delta x) - eta)``."""
    if not eta > 0:
        raise ValueError("eta must be positive")
    y, delta_x = triple.y, triple.delta_x
    f_y, f_dx = _cdf_pair(cdf, y, delta_x)
    ratio_log = math.log(f_y / f_dx)
    u = y / delta_x
    lower, upper, unstable, consistent = _sandwich(ratio_log, u + eta, u - eta)
    return BoundResult(lower, upper, eta, ratio_log, triple, Variant.THEOREM2, unstable, consistent)


def theorem3_bounds(triple: PerturbationTriple, cdf, eta: float) -> BoundResult:
    """Directional bounds ``N / ln(1/delta + eta)`` and ``N / ln(1/delta - eta)``.

    These are the greatest bounds for away perturbations and the least ones
    for toward perturbations.  Requires ``delta < 1``.
    """
    if not eta > 0:
        raise ValueError("eta must be positive")
    delta = triple.delta
    if delta >= 1:
        raise EmptyEtaIntervalError(f"delta = {delta} >= 1 leaves (1-1/delta, 1/delta-1) empty")
    kind = direction_class(triple)
    if kind is Direction.BOUNDARY:
        raise ValueError("directional bounds are undefined on the away/toward boundary")
    inv = 1.0 / delta
    if inv - eta <= 1.0:
        raise DomainError(f"ln(1/delta - eta) = ln({inv - eta}) is not positive")
    f_y, f_dx = _cdf_pair(cdf, triple.y, triple.delta_x)
    ratio_log = math.log(f_y / f_dx)
    lower, upper, unstable, consistent = _sandwich(ratio_log, inv + eta, inv - eta)
    variant = Variant.THEOREM3_AWAY if kind is Direction.AWAY else Variant.THEOREM3_TOWARD
    return BoundResult(lower, upper, eta, ratio_log, triple, variant, unstable, consistent)


def _lt(a, b, rtol):
    return a < b + rtol * max(abs(a), abs(b))


def chain_links(general: BoundResult, directional: BoundResult, rtol: float = CHAIN_RTOL) -> dict:
    """Pairwise links of the four-term ordering of general vs directional bounds.

    Away:   general.lower < dir.lower <= general.upper < dir.upper
    Toward: dir.lower < general.lower <= dir.upper < general.upper

    The middle link only follows by passing through LID(b) itself.  Each link
    holds within relative slack ``rtol``.
    """
    g, t = general, directional
    if t.variant is Variant.THEOREM3_AWAY:
        return {
            "outer_lower": _lt(g.lower, t.lower, rtol),
            "middle": _lt(t.lower, g.upper, rtol),
            "outer_upper": _lt(g.upper, t.upper, rtol),
        }
    return {
        "outer_lower": _lt(t.lower, g.lower, rtol),
        "middle": _lt(g.lower, t.upper, rtol),
        "outer_upper": _lt(t.upper, g.upper, rtol),
    }


@dataclass(frozen=True)
class AveragedBounds:
    lower_mean: float
    upper_mean: float
    n_feasible: int
    n_unstable: int


def averaged_bounds(triple: PerturbationTriple, cdf, lid_proxy: float,
                    grid_size: int = DEFAULT_ETA_GRID) -> AveragedBounds:
    """Mean general bounds over the feasible eta grid.

    Unstable evaluations are counted and left out of the means.  Sums use
    ``math.fsum`` so the result does not depend on evaluation order.
    """
    lowers, uppers, unstable = [], [], 0
    for cand in eta_grid(triple, lid_proxy, Variant.THEOREM2, grid_size):
        if not cand.feasible:
            continue
        res = theorem2_bounds(triple, cdf, cand.eta)
        if res.unstable or not (math.isfinite(res.lower) and math.isfinite(res.upper)):
            unstable += 1
            continue
        lowers.append(res.lower)
        uppers.append(res.upper)
    if not lowers:
        return AveragedBounds(math.nan, math.nan, 0, unstable)
    k = len(lowers)
    return AveragedBounds(math.fsum(lowers) / k, math.fsum(uppers) / k, k, unstable)
