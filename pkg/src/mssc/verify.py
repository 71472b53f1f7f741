"""Local-optimality checks for centroid systems and an exhaustive global oracle.

A centroid system with pairwise distinct centroids is a nontrivial local
minimiser exactly when every attracting centroid is the barycenter of its
attraction set and every non-attracting centroid lies outside all closed
balls centred at the data points with radius equal to their nearest-centroid
distance. Nontrivial local minimisers also have a unique nearest centroid
for every point; near-ties within ``tol`` are reported rather than decided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._validation import check_centroids
from .core import as_dataset, barycenter, dedup, pairwise_distinct, sq_distances

__all__ = [
    "NONTRIVIAL",
    "FAILS_NECESSARY",
    "INDETERMINATE_TIES",
    "VerifyReport",
    "verify_local",
    "OracleCapExceeded",
    "OracleResult",
    "count_partitions",
    "brute_force_global",
]

NONTRIVIAL = "nontrivial-local-solution"
FAILS_NECESSARY = "fails-necessary"
INDETERMINATE_TIES = "indeterminate-ties"


@dataclass(frozen=True)
class VerifyReport:
    """Per-condition outcome of :func:`verify_local`.

    ``barycenter_ok`` and ``ball_exclusion_ok`` map centroid index to a flag
    and only contain the centroids the respective condition applies to.
    """

    c1_holds: bool
    unique_nearest: bool
    barycenter_ok: dict
    ball_exclusion_ok: dict
    classification: str
    objective: float
    tied_points: list = field(default_factory=list)

    def as_dict(self):
        return {
            "classification": self.classification,
            "objective": self.objective,
            "c1_holds": self.c1_holds,
            "unique_nearest": self.unique_nearest,
            "barycenter_ok": {str(j): v for j, v in self.barycenter_ok.items()},
            "ball_exclusion_ok": {str(j): v for j, v in self.ball_exclusion_ok.items()},
            "tied_points": list(self.tied_points),
        }


def verify_local(data, x, tol=1e-9) -> VerifyReport:
    """Classify ``x`` with the barycenter and ball-exclusion conditions.

    Parameters
    ----------
    data : DataSet or array-like of shape (m, n)
        Deduplicated internally; weights are respected.
    x : array-like of shape (k, n)
    tol : float, default=1e-9
        Absolute slack for distance ties (on squared distances), for the
        per-coordinate barycenter comparison and for the ball test.
    """
    data = dedup(as_dataset(data))
    x = check_centroids(x, data.n, name="x")
    k = x.shape[0]
    D = sq_distances(data.points, x)
    nearest = D.min(axis=1)
    attraction = D <= (nearest + tol)[:, None]
    n_nearest = attraction.sum(axis=1)
    tied = np.flatnonzero(n_nearest > 1)
    objective = float(np.sum(data.weights * nearest)) / data.total_weight

    c1 = pairwise_distinct(x)
    bary_ok, ball_ok = {}, {}
    # radius of the closed ball around each point: distance to an attracting centroid
    radius = np.sqrt(nearest)
    for j in range(k):
        members = np.flatnonzero(attraction[:, j])
        if members.size:
            b = barycenter(data.points[members], data.weights[members])
            bary_ok[j] = bool(np.max(np.abs(b - x[j])) <= tol)
        else:
            gap = np.sqrt(((data.points - x[j]) ** 2).sum(axis=1))
            ball_ok[j] = bool(np.all(gap > radius + tol))

    if not c1:
        cls = FAILS_NECESSARY
    elif tied.size:
        cls = INDETERMINATE_TIES
    elif all(bary_ok.values()) and all(ball_ok.values()):
        cls = NONTRIVIAL
    else:
        cls = FAILS_NECESSARY
    return VerifyReport(
        c1_holds=c1,
        unique_nearest=not tied.size,
        barycenter_ok=bary_ok,
        ball_exclusion_ok=ball_ok,
        classification=cls,
        objective=objective,
        tied_points=tied.tolist(),
    )


class OracleCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    centers: np.ndarray
    objective: float
    optima: list
    n_partitions: int


@lru_cache(maxsize=None)
def _stirling2(m, j):
    if m == j:
        return 1
    if j == 0 or j > m:
        return 0
    return j * _stirling2(m - 1, j) + _stirling2(m - 1, j - 1)


def count_partitions(m, k):
    """Number of partitions of ``m`` items into at most ``k`` non-empty blocks."""
    return sum(_stirling2(m, j) for j in range(1, min(k, m) + 1))


def _restricted_growth(m, k):
    """Yield every restricted growth string of length ``m`` with at most ``k`` blocks."""
    rgs = [0] * m

    def rec(i, n_blocks):
        if i == m:
            yield rgs
            return
        for b in range(min(n_blocks + 1, k)):
            rgs[i] = b
            yield from rec(i + 1, max(n_blocks, b + 1))

    if m:
        yield from rec(1, 1)


def _padding(points, count):
    """``count`` distinct points far enough from the data to attract nothing."""
    lo, hi = points.min(axis=0), points.max(axis=0)
    span = float(np.max(hi - lo)) + 1.0
    out = np.tile(hi, (count, 1))
    out[:, 0] += span * (2.0 + np.arange(count))
    return out


def brute_force_global(data, k, *, cap=10**6, tol=1e-12) -> OracleResult:
    """Global minimum over all partitions into at most ``k`` clusters.

    Centroids are the block barycenters in order of each block's first
    point; partitions with fewer than ``k`` blocks are padded with far-away
    centroids. Every system within ``tol * max(f*, 1)`` of the minimum is
    returned in ``optima``.

    Raises
    ------
    OracleCapExceeded
        When the number of partitions exceeds ``cap``.
    """
    data = dedup(as_dataset(data))
    m = data.m
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    total = count_partitions(m, k)
    if total > cap:
        raise OracleCapExceeded(
            f"{total} partitions of {m} points into at most {k} blocks exceeds the cap {cap}"
        )

    P, w = data.points, data.weights
    wp = w[:, None] * P
    values, systems = [], []
    for rgs in _restricted_growth(m, k):
        labels = np.asarray(rgs)
        n_blocks = labels.max() + 1
        counts = np.bincount(labels, weights=w, minlength=n_blocks)
        sums = np.zeros((n_blocks, data.n))
        np.add.at(sums, labels, wp)
        centers = sums / counts[:, None]
        diff = P - centers[labels]
        f = float(np.sum(w * np.einsum("ij,ij->i", diff, diff))) / data.total_weight
        if n_blocks < k:
            centers = np.vstack([centers, _padding(P, k - n_blocks)])
        values.append(f)
        systems.append(centers)

    values = np.asarray(values)
    best = float(values.min())
    thresh = best + tol * max(best, 1.0)
    keep = np.flatnonzero(values <= thresh)
    optima = [systems[i] for i in keep]
    first = int(np.argmin(values))
    return OracleResult(systems[first], best, optima, total)
