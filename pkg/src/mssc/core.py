"""Domain types, distance kernels and the clustering objectives.

Centroid systems are plain ``ndarray`` of shape ``(n_centers, n_features)``;
row ``j`` is centroid ``j`` (0-based). Data sets carry optional positive
weights so that a deduplicated set reproduces every sum taken over the
original multiset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_centroids, check_points, check_weights

__all__ = [
    "DataSet",
    "Assignment",
    "ControlParams",
    "as_dataset",
    "dedup",
    "sq_distances",
    "natural_clustering",
    "mssc_objective",
    "assignment_objective",
    "barycenter",
    "pairwise_distinct",
]


@dataclass(frozen=True)
class DataSet:
    """A finite set of points in R^n with per-point multiplicities.

    Parameters
    ----------
    points : ndarray of shape (m, n)
    weights : ndarray of shape (m,), default=None
        Positive multiplicities. ``None`` means every point counts once.
    """

    points: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        points = check_points(self.points, name="points")
        weights = check_weights(self.weights, points.shape[0])
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def n(self) -> int:
        return self.points.shape[1]

    @property
    def total_weight(self) -> float:
        """Number of points of the underlying multiset (the ``m`` in 1/m)."""
        return float(self.weights.sum())

    def __len__(self):
        return self.m


def as_dataset(data, weights=None) -> DataSet:
    if isinstance(data, DataSet):
        if weights is not None:
            raise ValueError("weights given twice")
        return data
    return DataSet(data, weights)


@dataclass(frozen=True)
class ControlParams:
    """Tuning knobs of the incremental algorithms.

    ``gamma1``/``gamma2`` filter candidate data points and barycenters by
    their decrease relative to the best one; ``gamma3`` keeps the k-means
    results whose objective is within that factor of the best. ``delta`` is
    the neighbourhood width of the data-reduction step (``None`` picks
    ``min(1e-3, 1/l)`` per level) and only matters when ``reduce`` is set.
    """

    gamma1: float = 0.3
    gamma2: float = 0.3
    gamma3: float = 3.0
    delta: float | None = None
    reduce: bool = False
    reduction_threshold: str = "gamma"
    tol_dist: float = 0.0
    tol_conv: float = 0.0
    max_iter: int = 1000
    n_jobs: int = 1

    def __post_init__(self):
        for name in ("gamma1", "gamma2"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if not (self.gamma3 >= 1.0 and math.isfinite(self.gamma3)):
            raise ValueError(f"gamma3 must lie in [1, inf), got {self.gamma3}")
        if self.delta is not None and not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.reduction_threshold not in ("gamma", "eta"):
            raise ValueError("reduction_threshold must be 'gamma' or 'eta'")
        if self.tol_dist < 0 or self.tol_conv < 0:
            raise ValueError("tolerances must be non-negative")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if int(self.n_jobs) < 1:
            raise ValueError(f"n_jobs must be >= 1, got {self.n_jobs}")

    @property
    def gammas(self):
        return (self.gamma1, self.gamma2, self.gamma3)


@dataclass(frozen=True)
class Assignment:
    """Natural clustering of a data set by a centroid system.

    Attributes
    ----------
    labels : ndarray of shape (m,)
        Cluster index of each point (0-based).
    attraction : ndarray of shape (m, n_centers) of bool or None
        ``attraction[i, j]`` is True when centroid ``j`` is among the nearest
        centroids of point ``i``. ``None`` for assignments built from labels.
    """

    labels: np.ndarray
    n_clusters: int
    attraction: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_labels(cls, labels, n_clusters):
        labels = np.asarray(labels, dtype=np.intp).reshape(-1)
        if labels.size and (labels.min() < 0 or labels.max() >= n_clusters):
            raise ValueError("labels out of range")
        return cls(labels, int(n_clusters))

    @property
    def clusters(self):
        """Point indices of each cluster, in centroid order (may be empty)."""
        return [np.flatnonzero(self.labels == j) for j in range(self.n_clusters)]

    @property
    def attraction_sets(self):
        if self.attraction is None:
            raise ValueError("attraction sets are only defined for natural clusterings")
        return [np.flatnonzero(self.attraction[:, j]) for j in range(self.n_clusters)]

    @property
    def incidence(self):
        alpha = np.zeros((self.labels.shape[0], self.n_clusters), dtype=np.int8)
        alpha[np.arange(self.labels.shape[0]), self.labels] = 1
        return alpha

    def cluster_sizes(self, weights=None):
        w = np.ones(self.labels.shape[0]) if weights is None else weights
        return np.bincount(self.labels, weights=w, minlength=self.n_clusters)


def dedup(raw) -> DataSet:
    """Collapse identical points, summing their weights.

    Points keep the order of their first occurrence.
    """
    data = as_dataset(raw)
    _, first, inverse = np.unique(
        data.points, axis=0, return_index=True, return_inverse=True
    )
    inverse = inverse.reshape(-1)
    if first.shape[0] == data.m:
        return data
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.shape[0])
    weights = np.bincount(rank[inverse], weights=data.weights, minlength=order.shape[0])
    return DataSet(data.points[first[order]], weights)


def sq_distances(points, centers):
    """Squared Euclidean distances, shape (m, n_centers).

    Computed from explicit coordinate differences so that equal geometric
    distances give bit-identical results independent of point norms.
    """
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _weighted_mean(values, weights, total, compensated=False):
    if compensated:
        return math.fsum((weights * values).tolist()) / total
    return float(np.sum(weights * values)) / total


def natural_clustering(data, x, *, tol=0.0) -> Assignment:
    """Assign each point to its nearest centroid, ties going to the lowest index.

    ``tol`` only widens the attraction sets (``dist <= min + tol``); the
    labels always use exact comparison.
    """
    data = as_dataset(data)
    x = check_centroids(x, data.n)
    D = sq_distances(data.points, x)
    labels = np.argmin(D, axis=1)
    nearest = D[np.arange(data.m), labels]
    attraction = D <= (nearest + tol)[:, None]
    return Assignment(labels, x.shape[0], attraction)


def mssc_objective(data, x, *, compensated=False) -> float:
    """Mean squared distance of the points to their nearest centroid."""
    data = as_dataset(data)
    x = check_centroids(x, data.n)
    d = sq_distances(data.points, x).min(axis=1)
    return _weighted_mean(d, data.weights, data.total_weight, compensated)


def assignment_objective(data, x, assignment, *, compensated=False) -> float:
    """Objective of an explicit point-to-centroid assignment.

    ``assignment`` is an :class:`Assignment` or an integer label array. For
    the natural clustering of ``x`` this equals :func:`mssc_objective`.
    """
    data = as_dataset(data)
    x = check_centroids(x, data.n)
    labels = getattr(assignment, "labels", assignment)
    labels = np.asarray(labels).reshape(-1)
    if labels.shape[0] != data.m:
        raise ValueError(f"assignment covers {labels.shape[0]} points, data has {data.m}")
    if not np.issubdtype(labels.dtype, np.integer):
        raise ValueError("assignment labels must be integers")
    if labels.min() < 0 or labels.max() >= x.shape[0]:
        raise ValueError("assignment refers to a centroid that does not exist")
    n_clusters = getattr(assignment, "n_clusters", x.shape[0])
    if n_clusters != x.shape[0]:
        raise ValueError(f"assignment has {n_clusters} clusters, x has {x.shape[0]} centroids")
    diff = data.points - x[labels]
    d = np.einsum("ij,ij->i", diff, diff)
    return _weighted_mean(d, data.weights, data.total_weight, compensated)


def barycenter(points, weights=None):
    """Weighted coordinate-wise mean of a non-empty point set."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(1, -1)
    if points.shape[0] == 0:
        raise ValueError("barycenter of an empty set is undefined")
    if weights is None:
        return points.sum(axis=0) / points.shape[0]
    weights = np.asarray(weights, dtype=np.float64)
    return (weights[:, None] * points).sum(axis=0) / weights.sum()


def pairwise_distinct(x) -> bool:
    """True when no two rows of ``x`` are exactly equal."""
    x = np.asarray(x)
    return np.unique(x, axis=0).shape[0] == x.shape[0]
