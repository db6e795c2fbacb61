import math

import numpy as np
import pytest

from lidbounds.datasets import Dataset
from lidbounds.knn import all_distances, distance, knn, knn_member


def naive_distance(p, q):
    total = 0.0
    for a, b in zip(p, q):
        total += (a - b) ** 2
    return math.sqrt(total)


def test_distance_basics():
    assert distance([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert distance([0, 0], [3, 4]) == 5.0


def test_distance_matches_naive(rng):
    for _ in range(20):
        p, q = rng.uniform(size=(2, 784))
        assert distance(p, q) == pytest.approx(naive_distance(p, q), rel=1e-10)


def test_distance_mismatch():
    with pytest.raises(ValueError):
        distance([0, 0], [0, 0, 0])


def test_triangle_inequality(rng):
    pts = rng.normal(size=(1000, 3, 10))
    for a, b, c in pts:
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9


def test_knn_line():
    data = Dataset([[0.0], [1.0], [2.0], [3.0]])
    nl = knn(data, [0.0], 2, exclude=0)
    np.testing.assert_array_equal(nl.distances, [1.0, 2.0])
    np.testing.assert_array_equal(nl.indices, [1, 2])


def test_knn_excludes_member():
    data = Dataset(np.random.default_rng(0).normal(size=(30, 4)))
    nl = knn_member(data, 7, 29)
    assert 7 not in nl.indices
    assert nl.distances[0] > 0
    assert len(set(nl.indices)) == 29


def test_knn_matches_full_sort(rng):
    pts = rng.normal(size=(1000, 16))
    q = rng.normal(size=16)
    nl = knn(pts, q, 100)
    oracle = sorted((naive_distance(p, q), i) for i, p in enumerate(pts))[:100]
    np.testing.assert_allclose(nl.distances, [d for d, _ in oracle], rtol=1e-12)
    np.testing.assert_array_equal(nl.indices, [i for _, i in oracle])


def test_knn_ties_by_index():
    pts = np.array([[1.0], [0.0], [1.0], [1.0], [-1.0]])
    nl = knn(pts, [0.0], 5, exclude=None)
    np.testing.assert_array_equal(nl.indices, [1, 0, 2, 3, 4])


def test_knn_full_neighborhood(rng):
    pts = rng.normal(size=(50, 3))
    nl = knn_member(pts, 0, 49)
    np.testing.assert_allclose(nl.distances, np.sort(all_distances(pts, pts[0], exclude=0)))


@pytest.mark.parametrize("k", [0, 4])
def test_knn_k_range(k):
    with pytest.raises(ValueError):
        knn(np.zeros((4, 1)), [0.0], k, exclude=0)


def test_all_distances_small():
    data = Dataset([[0.0], [1.0], [2.0]])
    np.testing.assert_array_equal(all_distances(data, [1.0]), [1, 0, 1])
    np.testing.assert_array_equal(all_distances(data, [1.0], exclude=1), [1, 1])


def test_all_distances_singleton():
    assert all_distances(Dataset([[2.0, 3.0]]), [2.0, 3.0], exclude=0).size == 0


def test_all_distances_consistent_with_knn(rng):
    pts = rng.uniform(size=(200, 8))
    d = np.sort(all_distances(pts, pts[5], exclude=5))[:20]
    np.testing.assert_array_equal(d, knn_member(pts, 5, 20).distances)


def test_all_distances_dimension_mismatch():
    with pytest.raises(ValueError):
        all_distances(np.zeros((3, 2)), [0.0, 0.0, 0.0])
