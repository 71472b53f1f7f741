"""The k-means (Lloyd) iteration used as the inner solver.

Empty clusters keep their centroid: no re-seeding happens, which is what
keeps pairwise distinct centroids distinct after every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_centroids
from .core import Assignment, as_dataset, mssc_objective, natural_clustering

__all__ = ["KmResult", "km_step", "km_run"]


@dataclass(frozen=True)
class KmResult:
    """Outcome of :func:`km_run`.

    ``history`` holds the objective of the starting system followed by the
    objective after every step, so ``len(history) == iterations + 1``.
    """

    centers: np.ndarray
    assignment: Assignment
    objective: float
    iterations: int
    converged: bool
    history: list = field(default_factory=list, repr=False)


def _update(data, x, labels):
    sums = np.zeros_like(x)
    np.add.at(sums, labels, data.weights[:, None] * data.points)
    counts = np.bincount(labels, weights=data.weights, minlength=x.shape[0])
    nonempty = counts > 0
    new = x.copy()
    new[nonempty] = sums[nonempty] / counts[nonempty, None]
    return new, nonempty


def km_step(data, x):
    """One k-means step: natural clustering, then barycenter update.

    Centroids whose cluster is empty are returned unchanged.
    """
    data = as_dataset(data)
    x = check_centroids(x, data.n, name="x")
    labels = natural_clustering(data, x).labels
    return _update(data, x, labels)[0]


def km_run(data, x0, tol_conv=0.0, max_iter=1000) -> KmResult:
    """Iterate :func:`km_step` until the centroids are stable.

    Stops once every centroid with a non-empty cluster moved by at most
    ``tol_conv`` (Euclidean norm), or after ``max_iter`` steps.
    """
    data = as_dataset(data)
    x = check_centroids(x0, data.n, name="x0").copy()
    if tol_conv < 0:
        raise ValueError("tol_conv must be non-negative")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    history = [mssc_objective(data, x)]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        labels = natural_clustering(data, x).labels
        new, nonempty = _update(data, x, labels)
        shift = np.sqrt(((new - x) ** 2).sum(axis=1))[nonempty]
        x = new
        history.append(mssc_objective(data, x))
        if shift.size == 0 or shift.max() <= tol_conv:
            converged = True
            break

    assignment = natural_clustering(data, x)
    return KmResult(
        centers=x,
        assignment=assignment,
        objective=history[-1],
        iterations=iterations,
        converged=converged,
        history=history,
    )
