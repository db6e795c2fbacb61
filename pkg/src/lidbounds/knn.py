"""Euclidean distances and exact brute-force nearest neighbors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class NeighborList:
    """Sorted distances and dataset indices of the k nearest neighbors of a query."""

    distances: np.ndarray
    indices: np.ndarray
    query_index: int | None = None

    @property
    def k(self) -> int:
        return len(self.distances)

    @property
    def r_max(self) -> float:
        return float(self.distances[-1])


def _as_matrix(data) -> np.ndarray:
    return getattr(data, "points", data)


def distance(p, q) -> float:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: {p.shape} vs {q.shape}")
    diff = p - q
    return float(np.sqrt(np.dot(diff.ravel(), diff.ravel())))


def all_distances(data, query, exclude: int | None = None) -> np.ndarray:
    """Distances from ``query`` to every point, index-aligned.

    With ``exclude`` set, that entry is dropped and the result has ``n - 1``
    entries.
    """
    points = _as_matrix(data)
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (points.shape[1],):
        raise ValueError(f"query has shape {query.shape}, expected ({points.shape[1]},)")
    diff = points - query
    dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    if exclude is not None:
        dist = np.delete(dist, exclude)
    return dist


def knn(data, query, k: int, exclude: int | None = None) -> NeighborList:
    """Exact k nearest neighbors; ties go to the smaller dataset index."""
    points = _as_matrix(data)
    n = points.shape[0]
    available = n - (exclude is not None)
    if not 1 <= k <= available:
        raise ValueError(f"k must be in [1, {available}], got {k}")
    if exclude is not None and not 0 <= exclude < n:
        raise ValueError(f"exclude index {exclude} out of range")
    dist = all_distances(points, query)
    index = np.arange(n)
    if exclude is not None:
        dist = np.delete(dist, exclude)
        index = np.delete(index, exclude)
    order = np.argsort(dist, kind="stable")[:k]
    return NeighborList(dist[order], index[order], query_index=exclude)


def knn_member(data, i: int, k: int) -> NeighborList:
    """Neighbors of dataset member ``i`` with the member itself left out."""
    points = _as_matrix(data)
    return knn(points, points[i], k, exclude=i)
