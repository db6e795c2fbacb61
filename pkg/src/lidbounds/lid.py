"""Local intrinsic dimensionality: the MLE estimator and analytic tools.

The theoretical LID of a point is the small-radius limit of
``ID_F(r) = r F'(r) / F(r)`` where F is the CDF of distances from the point.
The MLE estimator approximates that limit from k nearest-neighbor distances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDistanceError, InfiniteEstimateError, NumericError

FD_REL_STEP = 1e-5


@dataclass(frozen=True)
class LidEstimate:
    value: float
    k: int
    r_max: float

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class PowerLawCdf:
    """``F(r) = (r / support)**exponent`` on ``[0, support]``, 1 beyond.

    ID_F(r) equals ``exponent`` at every radius inside the support, which
    makes this the exact oracle for the bound formulas.
    """

    exponent: float
    support: float = 1.0

    def __post_init__(self):
        if not self.exponent > 0 or not self.support > 0:
            raise ValueError("exponent and support must be positive")

    def cdf(self, r):
        r = np.asarray(r, dtype=np.float64)
        out = np.clip(r / self.support, 0.0, 1.0) ** self.exponent
        return out if out.ndim else float(out)

    def pdf(self, r):
        r = np.asarray(r, dtype=np.float64)
        inside = (r >= 0) & (r <= self.support)
        out = np.where(inside, self.exponent / self.support * np.clip(r / self.support, 0, 1) ** (self.exponent - 1), 0.0)
        return out if out.ndim else float(out)

    def __call__(self, r):
        return self.cdf(r)


def expansion_dimension(v1: float, v2: float, r1: float, r2: float) -> float:
    """Dimension m solving ``v2 / v1 = (r2 / r1)**m``."""
    if min(v1, v2, r1, r2) <= 0:
        raise ValueError("volumes and radii must be positive")
    if r1 == r2:
        raise ValueError("radii must differ")
    return math.log(v2 / v1) / math.log(r2 / r1)


def mle_lid(neighbors) -> LidEstimate:
    """Maximum-likelihood LID estimate from sorted neighbor distances.

    ``neighbors`` is a :class:`~lidbounds.knn.NeighborList` or an array of the
    k neighbor distances.  The average runs over all k terms; the last one,
    ``log(r_max / r_max)``, contributes zero.
    """
    dist = np.asarray(getattr(neighbors, "distances", neighbors), dtype=np.float64)
    k = dist.shape[0]
    if dist.ndim != 1 or k < 2:
        raise ValueError("mle_lid needs at least 2 neighbor distances")
    if not np.all(np.isfinite(dist)):
        raise ValueError("neighbor distances must be finite")
    if np.any(dist <= 0):
        raise DegenerateDistanceError("zero neighbor distance; deduplicate the data first")
    r_max = dist.max()
    mean_log = float(np.mean(np.log(dist / r_max)))
    if mean_log == 0.0:
        raise InfiniteEstimateError("all neighbor distances equal r_max")
    return LidEstimate(-1.0 / mean_log, k, float(r_max))


def mle_lid_batch(distances: np.ndarray) -> np.ndarray:
    """Row-wise :func:`mle_lid` for an ``(n, k)`` matrix of sorted distances."""
    distances = np.asarray(distances, dtype=np.float64)
    if np.any(distances <= 0):
        raise DegenerateDistanceError("zero neighbor distance in batch")
    mean_log = np.mean(np.log(distances / distances.max(axis=1, keepdims=True)), axis=1)
    if np.any(mean_log == 0):
        raise InfiniteEstimateError("a row has all distances equal to r_max")
    return -1.0 / mean_log


def _cdf_value(cdf, r):
    fn = getattr(cdf, "cdf", cdf)
    return float(fn(r))


def _cdf_derivative(cdf, r):
    pdf = getattr(cdf, "pdf", None)
    if pdf is not None:
        return float(pdf(r))
    h = FD_REL_STEP * r
    return (_cdf_value(cdf, r + h) - _cdf_value(cdf, r - h)) / (2 * h)


def id_at_radius(cdf, r: float) -> float:
    """``r F'(r) / F(r)``.

    ``cdf`` may be a plain callable, in which case F' comes from a central
    difference with step ``1e-5 * r``; objects with a ``pdf`` method supply
    the derivative directly.
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    f = _cdf_value(cdf, r)
    if not f > 0:
        raise ValueError(f"F({r}) = {f} is not positive; ID_F is undefined there")
    return r * _cdf_derivative(cdf, r) / f


def _adaptive_simpson(fn, a, b, rtol, atol=1e-14, max_depth=50):
    def simpson(fa, fm, fb, a, b):
        return (b - a) * (fa + 4 * fm + fb) / 6

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = fn(lm), fn(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        err = left + right - whole
        if abs(err) <= 15 * tol:
            return left + right + err / 15
        if depth >= max_depth:
            raise NumericError(f"adaptive Simpson did not converge on [{a}, {b}]")
        return (recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1)
                + recurse(m, b, fm, frm, fb, right, tol / 2, depth + 1))

    fa, fb, fm = fn(a), fn(b), fn(0.5 * (a + b))
    whole = simpson(fa, fm, fb, a, b)
    # coarse estimate of the integral scale for the relative tolerance
    scale = abs(whole)
    tol = max(rtol * scale, atol)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def representation_factor(cdf, r: float, w: float, lid0: float, rtol: float = 1e-8) -> float:
    """``G_{F,w}(r) = exp(integral_r^w (lid0 - ID_F(t)) / t dt)``.

    Integrated by adaptive Simpson in ``s = log t``, where the integrand
    becomes ``lid0 - ID_F(exp(s))``.
    """
    if not (r > 0 and w > 0):
        raise ValueError("r and w must be positive")
    if r == w:
        return 1.0
    integral = _adaptive_simpson(lambda s: lid0 - id_at_radius(cdf, math.exp(s)),
                                 math.log(r), math.log(w), rtol)
    return math.exp(integral)
