"""Candidate selection for the next centroid and the two seeding procedures.

Given ``l`` frozen centroids, :func:`cascade` filters the data points by
their decrease ``z``, replaces each survivor ``a`` by the barycenter of the
points it attracts, filters again and returns the ``(l+1)``-centroid
starting systems. :func:`procedure1` keeps only the new component of each
k-means result; :func:`procedure2` keeps the full systems and returns the
best one.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .auxiliary import AuxContext
from .core import ControlParams, barycenter, mssc_objective
from .kmeans import KmResult, km_run
from .reduction import cluster_stats, default_delta, reduced_candidates

__all__ = [
    "DegenerateInputError",
    "CandidateCascade",
    "Procedure1Result",
    "Procedure2Result",
    "cascade",
    "procedure1",
    "procedure2",
]


class DegenerateInputError(ValueError):
    """No data point can lower the objective: every point is a centroid."""


@dataclass(frozen=True)
class CandidateCascade:
    """Intermediate sets of the candidate selection at one level.

    Index arrays refer to rows of the data set. ``a2_sources[r]`` lists the
    data indices whose attracted barycenter is ``a2[r]``.
    """

    z1max: float
    a1: np.ndarray
    a1_decrease: np.ndarray
    a2: np.ndarray
    a2_sources: list
    a2_decrease: np.ndarray
    z2max: float
    a3_index: np.ndarray
    omega: list
    reduced: bool = False

    @property
    def a3(self):
        return self.a2[self.a3_index]


@dataclass(frozen=True)
class Procedure1Result:
    cascade: CandidateCascade
    runs: list = field(repr=False)
    a4: np.ndarray
    a4_objective: np.ndarray
    f_min: float
    a5: np.ndarray


@dataclass(frozen=True)
class Procedure2Result:
    cascade: CandidateCascade
    runs: list = field(repr=False)
    a4: list
    a4_objective: np.ndarray
    f_min: float
    a5_index: np.ndarray
    xhat: np.ndarray
    xhat_objective: float

    @property
    def a5(self):
        return [self.a4[i] for i in self.a5_index]


def _unique_rows(rows):
    """Exact-equality dedup keeping first occurrences; returns (kept, groups)."""
    kept, groups, seen = [], [], {}
    for idx, row in enumerate(rows):
        key = np.ascontiguousarray(row).tobytes()
        if key in seen:
            groups[seen[key]].append(idx)
        else:
            seen[key] = len(kept)
            kept.append(row)
            groups.append([idx])
    return kept, groups


def cascade(ctx: AuxContext, gamma1, gamma2, *, candidates=None) -> CandidateCascade:
    """Build the starting systems ``(xbar, c)`` for the ``(l+1)``-problem.

    Parameters
    ----------
    ctx : AuxContext
    gamma1, gamma2 : float in [0, 1]
        Relative thresholds on the decrease of data points and of their
        attracted barycenters.
    candidates : array of int, default=None
        Replacement for the first filtered set (the reduced set). ``z1max``
        is still taken over every data point in Y1.
    """
    data = ctx.data
    z = ctx.decrease_many(data.points)
    in_y1 = z > 0.0
    if not in_y1.any():
        raise DegenerateInputError(
            "no data point lies in Y1; the data has no more distinct points than centroids"
        )
    z1max = float(z[in_y1].max())
    if candidates is None:
        a1 = np.flatnonzero(in_y1 & (z >= gamma1 * z1max))
    else:
        a1 = np.asarray(candidates, dtype=np.intp)

    bary = []
    for i in a1:
        attracted, _ = ctx.partition(data.points[i])
        bary.append(barycenter(data.points[attracted], data.weights[attracted]))
    kept, groups = _unique_rows(bary)
    a2 = np.array(kept).reshape(len(kept), data.n)
    a2_sources = [a1[g].tolist() for g in groups]
    z2 = ctx.decrease_many(a2)
    z2max = float(z2.max())
    a3_index = np.flatnonzero(z2 >= gamma2 * z2max)
    omega = [np.vstack([ctx.xbar, a2[r]]) for r in a3_index]
    return CandidateCascade(
        z1max=z1max,
        a1=a1,
        a1_decrease=z[a1],
        a2=a2,
        a2_sources=a2_sources,
        a2_decrease=z2,
        z2max=z2max,
        a3_index=a3_index,
        omega=omega,
        reduced=candidates is not None,
    )


def worker_count(n_jobs=None):
    """Resolve a worker count, capped by the ``MSSC_THREADS`` variable."""
    if n_jobs is None:
        n_jobs = 1
    cap = os.environ.get("MSSC_THREADS")
    if cap:
        n_jobs = min(n_jobs, max(1, int(cap)))
    return max(1, n_jobs)


def run_starts(data, starts, tol_conv, max_iter, n_jobs=1) -> list[KmResult]:
    """k-means from every start; results come back in start order."""
    n_jobs = worker_count(n_jobs)
    if n_jobs == 1 or len(starts) < 2:
        return [km_run(data, x0, tol_conv, max_iter) for x0 in starts]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(lambda x0: km_run(data, x0, tol_conv, max_iter), starts))


def level_cascade(ctx: AuxContext, params: ControlParams) -> CandidateCascade:
    """:func:`cascade` with the optional reduction of the first candidate set.

    An empty reduced set falls back to the unreduced one.
    """
    if params.reduce:
        delta = params.delta if params.delta is not None else default_delta(ctx.ell)
        delta = min(delta, 1.0 / ctx.ell)
        stats = cluster_stats(ctx.data, ctx.xbar, delta=delta)
        reduced = reduced_candidates(
            ctx, stats, params.gamma1, threshold=params.reduction_threshold
        )
        if reduced.size:
            return cascade(ctx, params.gamma1, params.gamma2, candidates=reduced)
    return cascade(ctx, params.gamma1, params.gamma2)


def procedure1(data, xbar, params: ControlParams = None) -> Procedure1Result:
    """Starting points for the ``(l+1)``-problem, keeping only new components.

    Each start ``(xbar, c)`` is refined by k-means; the last component of
    every result forms ``a4``. Points whose auxiliary objective is within
    ``gamma3`` times the best are returned as ``a5``.
    """
    params = params or ControlParams()
    ctx = AuxContext.build(data, xbar)
    casc = level_cascade(ctx, params)
    runs = run_starts(ctx.data, casc.omega, params.tol_conv, params.max_iter, params.n_jobs)
    kept, _ = _unique_rows([r.centers[-1] for r in runs])
    a4 = np.array(kept).reshape(len(kept), ctx.data.n)
    g4 = ctx.objective_many(a4)
    f_min = float(g4.min())
    a5 = a4[g4 <= params.gamma3 * f_min]
    return Procedure1Result(casc, runs, a4, g4, f_min, a5)


def procedure2(data, xbar, params: ControlParams = None) -> Procedure2Result:
    """New ``(l+1)``-centroid system from the best k-means refinement.

    The full k-means results form ``a4``; those within ``gamma3`` times the
    best objective form ``a5``, and the returned ``xhat`` is the one with
    the smallest objective (lowest index on ties).
    """
    params = params or ControlParams()
    ctx = AuxContext.build(data, xbar)
    casc = level_cascade(ctx, params)
    runs = run_starts(ctx.data, casc.omega, params.tol_conv, params.max_iter, params.n_jobs)
    a4, _ = _unique_rows([r.centers for r in runs])
    f4 = np.array([mssc_objective(ctx.data, x) for x in a4])
    f_min = float(f4.min())
    a5_index = np.flatnonzero(f4 <= params.gamma3 * f_min)
    best = int(a5_index[np.argmin(f4[a5_index])])
    return Procedure2Result(casc, runs, a4, f4, f_min, a5_index, a4[best], float(f4[best]))
