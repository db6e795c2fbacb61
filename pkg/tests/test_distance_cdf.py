import math

import numpy as np
import pytest

from lidbounds.distance_cdf import eval_cdf, expected_rank, fit_cdf, silverman_bandwidth
from lidbounds.errors import BandwidthError


def gaussian_density(grid, sample, h):
    """KDE density written out with math.exp, independent of the library."""
    z = (grid[:, None] - sample[None, :]) / h
    return np.exp(-0.5 * z * z).sum(axis=1) / (len(sample) * h * math.sqrt(2 * math.pi))


def integrated_cdf(grid, sample, h, steps_per_unit=200_000):
    """F on ``grid`` by trapezoid integration of the density from far below the sample."""
    lo = sample.min() - 12 * h
    fine = np.linspace(lo, grid.max(), int((grid.max() - lo) * steps_per_unit) + 1)
    dens = gaussian_density(fine, sample, h)
    cum = np.concatenate([[0.0], np.cumsum((dens[1:] + dens[:-1]) * np.diff(fine) / 2)])
    return np.interp(grid, fine, cum)


@pytest.fixture(scope="module")
def sample():
    return np.random.default_rng(3).gamma(4.0, 0.5, size=1000)


def test_bandwidth_rule(sample):
    std = np.std(sample, ddof=1)
    iqr = np.subtract(*np.percentile(sample, [75, 25]))
    assert silverman_bandwidth(sample) == pytest.approx(0.9 * min(std, iqr / 1.34) * 1000 ** -0.2)


def test_matches_integrated_density(sample):
    cdf = fit_cdf(sample)
    grid = np.linspace(0, sample.max() + 1, 512)
    oracle = integrated_cdf(grid, sample, cdf.bandwidth, steps_per_unit=20_000)
    np.testing.assert_allclose(eval_cdf(cdf, grid), oracle, atol=1e-6)


def test_pdf_matches_oracle(sample):
    cdf = fit_cdf(sample)
    grid = np.linspace(0, 6, 50)
    np.testing.assert_allclose(cdf.pdf(grid), gaussian_density(grid, sample, cdf.bandwidth), rtol=1e-12)


def test_far_right_is_one():
    cdf = fit_cdf([2.0, 2.0, 2.0, 2.0, 2.1])
    assert eval_cdf(cdf, 1e6) == 1.0


def test_symmetric_pair_median():
    cdf = fit_cdf([1.0, 3.0, 1.0, 3.0, 1.0, 3.0], bandwidth=0.4)
    assert eval_cdf(cdf, 2.0) == pytest.approx(0.5, abs=1e-15)


def test_left_tail_small():
    cdf = fit_cdf(np.random.default_rng(0).uniform(5, 6, 200))
    assert eval_cdf(cdf, 0.0) <= 0.01


def test_right_tail(sample):
    cdf = fit_cdf(sample)
    assert eval_cdf(cdf, sample.max() + 10 * cdf.bandwidth) >= 0.999


def test_monotone_random_pairs(sample, rng):
    cdf = fit_cdf(sample)
    r = np.sort(rng.uniform(0, 8, size=(10_000, 2)), axis=1)
    f = eval_cdf(cdf, r)
    assert np.all(f[:, 0] <= f[:, 1])


def test_positive_everywhere(sample):
    cdf = fit_cdf(sample)
    assert np.all(eval_cdf(cdf, np.linspace(1e-6, 0.1, 100)) > 0)


def test_close_to_empirical(sample):
    cdf = fit_cdf(sample)
    grid = np.sort(sample)
    ecdf = np.arange(1, len(grid) + 1) / len(grid)
    assert np.max(np.abs(eval_cdf(cdf, grid) - ecdf)) <= 0.1


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_expected_rank_vs_count(sample, q):
    cdf = fit_cdf(sample)
    r = np.quantile(sample, q)
    count = np.sum(sample <= r)
    assert abs(expected_rank(cdf, r, len(sample)) - count) <= 4 * math.sqrt(len(sample))


def test_expected_rank_scaling():
    cdf = fit_cdf([1.0, 3.0, 1.0, 3.0, 1.0, 3.0], bandwidth=0.4)
    assert expected_rank(cdf, 2.0, 1000) == pytest.approx(500)
    assert expected_rank(fit_cdf([5.0, 5.5, 6.0, 6.5, 7.0]), 0.0, 1000) < 1e-3


def test_too_few_samples():
    with pytest.raises(ValueError):
        fit_cdf([1.0, 2.0, 3.0, 4.0])


def test_zero_variance():
    with pytest.raises(BandwidthError):
        fit_cdf([1.0] * 10)


@pytest.mark.parametrize("bad", [0.0, -1.0, np.nan])
def test_rejects_bad_distances(bad):
    with pytest.raises(ValueError):
        fit_cdf([1.0, 2.0, 3.0, 4.0, bad])


def test_negative_radius():
    with pytest.raises(ValueError):
        eval_cdf(fit_cdf([1.0, 2.0, 3.0, 4.0, 5.0]), -0.1)


def test_sample_is_frozen():
    cdf = fit_cdf([1.0, 2.0, 3.0, 4.0, 5.0])
    with pytest.raises(ValueError):
        cdf.sample[0] = 9.0
