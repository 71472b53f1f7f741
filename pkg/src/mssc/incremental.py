"""Incremental drivers: start from the data barycenter and add one centroid per level.

:func:`algorithm1` restarts k-means from ``(xbar, y)`` for every retained
new component ``y``; :func:`algorithm2` keeps the full k-means results
directly, which also guarantees pairwise distinct centroids on data with
distinct points.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .core import ControlParams, as_dataset, barycenter, dedup, mssc_objective, natural_clustering
from .seeding import procedure1, procedure2, run_starts

__all__ = ["LevelTrace", "RunTrace", "algorithm1", "algorithm2", "recommend_gammas"]


def recommend_gammas(m):
    """Default ``(gamma1, gamma2, gamma3)`` for a data set of ``m`` points."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m <= 200:
        return (0.3, 0.3, 3.0)
    if m <= 6000:
        return (0.5, 0.8, 1.5)
    return (0.85, 0.99, 1.1)


@dataclass
class LevelTrace:
    """What happened while going from ``ell`` to ``ell + 1`` centroids."""

    ell: int
    f_before: float
    z1max: float
    n_a1: int
    n_a2: int
    z2max: float
    n_a3: int
    n_omega: int
    n_a4: int
    n_a5: int
    f_min: float
    f_after: float
    km_iterations: int
    reduced: bool
    chosen: np.ndarray
    a5_systems: list = field(default_factory=list, repr=False)
    a5_objectives: list = field(default_factory=list, repr=False)
    detail: dict = field(default_factory=dict, repr=False)

    def summary(self):
        return {
            "ell": self.ell,
            "f_before": self.f_before,
            "f_after": self.f_after,
            "z1max": self.z1max,
            "z2max": self.z2max,
            "n_a1": self.n_a1,
            "n_a2": self.n_a2,
            "n_a3": self.n_a3,
            "n_omega": self.n_omega,
            "n_a4": self.n_a4,
            "n_a5": self.n_a5,
            "f_min": self.f_min,
            "km_iterations": self.km_iterations,
            "reduced": self.reduced,
            "chosen": self.chosen.tolist(),
        }


@dataclass
class RunTrace:
    algorithm: str
    levels: list = field(default_factory=list)
    objectives: list = field(default_factory=list)
    final_objective: float = float("nan")
    distance_evaluations: int = 0
    wall_time: float = 0.0

    def as_dict(self, verbose=False, timing=False):
        out = {
            "algorithm": self.algorithm,
            "objectives": list(self.objectives),
            "final_objective": self.final_objective,
            "distance_evaluations": self.distance_evaluations,
            "levels": [],
        }
        for lv in self.levels:
            entry = lv.summary()
            if verbose:
                entry.update(lv.detail)
            out["levels"].append(entry)
        if timing:
            out["wall_time"] = self.wall_time
        return out


def _prepare(data, k, params):
    data = as_dataset(data)
    work = dedup(data)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > work.m:
        raise ValueError(
            f"k={k} exceeds the number of distinct data points ({work.m})"
        )
    return data, work, params or ControlParams()


def _cascade_detail(casc):
    return {
        "a1": casc.a1.tolist(),
        "a1_decrease": casc.a1_decrease.tolist(),
        "a2": casc.a2.tolist(),
        "a2_sources": casc.a2_sources,
        "a2_decrease": casc.a2_decrease.tolist(),
        "a3": casc.a3.tolist(),
    }


def algorithm1(data, k, params: ControlParams = None):
    """Incremental clustering, version 1.

    Parameters
    ----------
    data : DataSet or array-like of shape (m, n)
    k : int
        Number of centroids, at most the number of distinct points.
    params : ControlParams, default=None

    Returns
    -------
    centers : ndarray of shape (k, n)
    trace : RunTrace
    """
    t0 = time.perf_counter()
    _, work, params = _prepare(data, k, params)
    m = work.m
    trace = RunTrace("obav1")
    xbar = barycenter(work.points, work.weights).reshape(1, -1)
    f = mssc_objective(work, xbar)
    trace.objectives.append(f)
    evals = m

    for ell in range(1, k):
        p1 = procedure1(work, xbar, params)
        casc = p1.cascade
        starts = [np.vstack([xbar, y]) for y in p1.a5]
        runs = run_starts(work, starts, params.tol_conv, params.max_iter, params.n_jobs)
        f6 = np.array([r.objective for r in runs])
        best = int(np.argmin(f6))
        iters = sum(r.iterations for r in p1.runs) + sum(r.iterations for r in runs)
        evals += m * ell + m * (m + casc.a1.shape[0] + casc.a2.shape[0] + p1.a4.shape[0])
        evals += m * (ell + 1) * 2 * (iters + len(p1.runs) + len(runs))

        detail = _cascade_detail(casc)
        detail.update(
            a4=p1.a4.tolist(),
            a4_objective=p1.a4_objective.tolist(),
            a5=p1.a5.tolist(),
            a6=[r.centers.tolist() for r in runs],
            a6_objective=f6.tolist(),
        )
        trace.levels.append(
            LevelTrace(
                ell=ell,
                f_before=f,
                z1max=casc.z1max,
                n_a1=casc.a1.shape[0],
                n_a2=casc.a2.shape[0],
                z2max=casc.z2max,
                n_a3=casc.a3_index.shape[0],
                n_omega=len(casc.omega),
                n_a4=p1.a4.shape[0],
                n_a5=p1.a5.shape[0],
                f_min=p1.f_min,
                f_after=float(f6[best]),
                km_iterations=iters,
                reduced=casc.reduced,
                chosen=runs[best].centers,
                a5_systems=[r.centers for r in runs],
                a5_objectives=f6.tolist(),
                detail=detail,
            )
        )
        xbar = runs[best].centers
        f = float(f6[best])
        trace.objectives.append(f)

    trace.final_objective = f
    trace.distance_evaluations = int(evals)
    trace.wall_time = time.perf_counter() - t0
    return xbar, trace


def algorithm2(data, k, params: ControlParams = None):
    """Incremental clustering, version 2.

    Parameters
    ----------
    data : DataSet or array-like of shape (m, n)
    k : int
        Number of centroids, at most the number of distinct points.
    params : ControlParams, default=None

    Returns
    -------
    centers : ndarray of shape (k, n)
        Pairwise distinct centroids.
    assignment : Assignment
        Natural clustering of the original (not deduplicated) data.
    trace : RunTrace
    """
    t0 = time.perf_counter()
    data, work, params = _prepare(data, k, params)
    m = work.m
    trace = RunTrace("obav2")
    xbar = barycenter(work.points, work.weights).reshape(1, -1)
    f = mssc_objective(work, xbar)
    trace.objectives.append(f)
    evals = m

    for ell in range(1, k):
        p2 = procedure2(work, xbar, params)
        casc = p2.cascade
        iters = sum(r.iterations for r in p2.runs)
        evals += m * ell + m * (m + casc.a1.shape[0] + casc.a2.shape[0])
        evals += m * (ell + 1) * (2 * (iters + len(p2.runs)) + len(p2.a4))

        detail = _cascade_detail(casc)
        detail.update(
            a4=[x.tolist() for x in p2.a4],
            a4_objective=p2.a4_objective.tolist(),
            a5_index=p2.a5_index.tolist(),
        )
        trace.levels.append(
            LevelTrace(
                ell=ell,
                f_before=f,
                z1max=casc.z1max,
                n_a1=casc.a1.shape[0],
                n_a2=casc.a2.shape[0],
                z2max=casc.z2max,
                n_a3=casc.a3_index.shape[0],
                n_omega=len(casc.omega),
                n_a4=len(p2.a4),
                n_a5=p2.a5_index.shape[0],
                f_min=p2.f_min,
                f_after=p2.xhat_objective,
                km_iterations=iters,
                reduced=casc.reduced,
                chosen=p2.xhat,
                a5_systems=p2.a5,
                a5_objectives=p2.a4_objective[p2.a5_index].tolist(),
                detail=detail,
            )
        )
        # xhat is already the lowest-index minimiser of a5, i.e. the pick from a6
        xbar = p2.xhat
        f = p2.xhat_objective
        trace.objectives.append(f)

    assignment = natural_clustering(data, xbar)
    trace.final_objective = f
    trace.distance_evaluations = int(evals + data.m * k)
    trace.wall_time = time.perf_counter() - t0
    return xbar, assignment, trace
