"""Neighbourhood-based reduction of the candidate data points.

Within each current cluster only the points lying relatively far from the
centroid are kept as candidates for a new centroid. "Far" means a squared
distance of at least ``eta_j * alpha_j`` where ``alpha_j`` is the cluster's
mean squared distance and ``eta_j = 1 + l * delta * (mu_j - 1)`` grows with
the spread ratio ``mu_j = beta_j / alpha_j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_centroids
from .core import as_dataset, natural_clustering, sq_distances

__all__ = ["ClusterStats", "default_delta", "cluster_stats", "reduced_candidates"]


@dataclass(frozen=True)
class ClusterStats:
    cluster: int
    alpha: float
    beta: float
    mu: float
    eta: float
    far_points: np.ndarray  # data indices, ascending


def default_delta(ell):
    return min(1e-3, 1.0 / ell)


def cluster_stats(data, xbar, assignment=None, delta=None):
    """Spread statistics and far-point subsets of every non-empty cluster.

    Parameters
    ----------
    data : DataSet or array-like of shape (m, n)
    xbar : array-like of shape (l, n)
    assignment : Assignment, default=None
        Natural clustering of ``xbar``; computed when omitted.
    delta : float, default=None
        Must lie in ``(0, 1/l]``; ``None`` uses ``min(1e-3, 1/l)``.

    Returns
    -------
    list of ClusterStats, one per non-empty cluster in centroid order.
    """
    data = as_dataset(data)
    xbar = check_centroids(xbar, data.n, name="xbar")
    ell = xbar.shape[0]
    if delta is None:
        delta = default_delta(ell)
    if not 0.0 < delta <= 1.0 / ell:
        raise ValueError(f"delta must lie in (0, 1/l] = (0, {1.0 / ell}], got {delta}")
    if assignment is None:
        assignment = natural_clustering(data, xbar)

    labels = assignment.labels
    dist = sq_distances(data.points, xbar)[np.arange(data.m), labels]
    stats = []
    for j in range(ell):
        members = np.flatnonzero(labels == j)
        if members.size == 0:
            continue
        w = data.weights[members]
        dj = dist[members]
        alpha = float(np.sum(w * dj)) / float(w.sum())
        beta = float(dj.max())
        if alpha > 0.0:
            mu = max(beta / alpha, 1.0)
        else:
            # every member sits on the centroid
            mu = 1.0
        eta = 1.0 + ell * delta * (mu - 1.0)
        # min() keeps the farthest point even when rounding pushes eta*alpha past beta
        threshold = min(eta * alpha, beta)
        far = members[dj >= threshold]
        stats.append(ClusterStats(j, alpha, beta, mu, eta, far))
    return stats


def reduced_candidates(ctx, stats, gamma1, *, threshold="gamma"):
    """Data indices of the reduced first-stage candidate set.

    Keeps far points lying in Y1 whose decrease reaches ``coef * z1max``,
    where ``z1max`` is taken over all data points in Y1. ``coef`` is
    ``gamma1`` by default; ``threshold="eta"`` uses ``eta`` of the first
    non-empty cluster instead. The result may be empty.
    """
    if threshold == "gamma":
        coef = gamma1
    elif threshold == "eta":
        coef = stats[0].eta
    else:
        raise ValueError("threshold must be 'gamma' or 'eta'")

    z = ctx.decrease_many(ctx.data.points)
    in_y1 = z > 0.0
    if not in_y1.any():
        return np.empty(0, dtype=np.intp)
    z1max = z[in_y1].max()
    far = np.zeros(ctx.data.m, dtype=bool)
    for s in stats:
        far[s.far_points] = True
    return np.flatnonzero(far & in_y1 & (z >= coef * z1max))
