"""Gaussian-kernel estimate of the CDF of distances from a point.

The KDE density integrates in closed form, so the CDF is a mean of shifted
standard normal CDFs rather than a numerical integral.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import BandwidthError

MIN_SAMPLES = 5
_SQRT_2PI = np.sqrt(2.0 * np.pi)


def silverman_bandwidth(sample) -> float:
    """Silverman's rule of thumb, ``0.9 * min(std, IQR/1.34) * N**-0.2``.

    A zero IQR with positive spread falls back to the standard deviation.
    """
    sample = np.asarray(sample, dtype=np.float64)
    std = float(np.std(sample, ddof=1))
    q75, q25 = np.percentile(sample, [75, 25])
    spread = min(std, (q75 - q25) / 1.34)
    if spread <= 0:
        spread = std
    if not spread > 0:
        raise BandwidthError("distance sample has zero variance; bandwidth undefined")
    return 0.9 * spread * len(sample) ** -0.2


@dataclass(frozen=True, eq=False)
class DistanceCdf:
    sample: np.ndarray
    bandwidth: float

    def cdf(self, r):
        r = np.asarray(r, dtype=np.float64)
        z = (r[..., None] - self.sample) / self.bandwidth
        out = ndtr(z).mean(axis=-1)
        return out if out.ndim else float(out)

    def pdf(self, r):
        r = np.asarray(r, dtype=np.float64)
        z = (r[..., None] - self.sample) / self.bandwidth
        out = np.exp(-0.5 * z * z).mean(axis=-1) / (_SQRT_2PI * self.bandwidth)
        return out if out.ndim else float(out)

    def __call__(self, r):
        return self.cdf(r)

    @property
    def n_samples(self) -> int:
        return len(self.sample)


def fit_cdf(distances, bandwidth: float | None = None) -> DistanceCdf:
    """Fit the Gaussian-KDE distance CDF; bandwidth defaults to Silverman's rule."""
    sample = np.array(distances, dtype=np.float64).ravel()
    if sample.size < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} distances, got {sample.size}")
    if not np.all(np.isfinite(sample)) or np.any(sample <= 0):
        raise ValueError("distances must be positive and finite")
    h = silverman_bandwidth(sample) if bandwidth is None else float(bandwidth)
    if not h > 0:
        raise BandwidthError(f"bandwidth must be positive, got {h}")
    sample.flags.writeable = False
    return DistanceCdf(sample, h)


def eval_cdf(cdf: DistanceCdf, r):
    """F(r) for scalar or array ``r >= 0``."""
    if np.any(np.asarray(r) < 0):
        raise ValueError("radius must be non-negative")
    return cdf.cdf(r)


def expected_rank(cdf: DistanceCdf, r, n: int):
    """Expected number of the ``n`` samples within distance ``r``: ``n * F(r)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * eval_cdf(cdf, r)
