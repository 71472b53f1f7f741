"""The one-new-centroid (auxiliary) clustering problem.

With the current centroids frozen, adding a centroid ``y`` gives the
objective ``g(y) = mean_i min(d_i, |y - a_i|^2)`` where ``d_i`` is the
squared distance of point ``i`` to its nearest existing centroid.
:class:`AuxContext` caches ``d`` once per level; every query below is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_centroids, check_point
from .core import DataSet, as_dataset, barycenter, sq_distances

__all__ = ["AuxContext", "build_context"]

# Rows of candidates evaluated per block in the vectorised queries.
_BLOCK = 256


@dataclass(frozen=True)
class AuxContext:
    data: DataSet
    xbar: np.ndarray
    d: np.ndarray
    f_ell: float

    @classmethod
    def build(cls, data, xbar):
        data = as_dataset(data)
        xbar = check_centroids(xbar, data.n, name="xbar")
        d = sq_distances(data.points, xbar).min(axis=1)
        d.setflags(write=False)
        f_ell = float(np.sum(data.weights * d)) / data.total_weight
        return cls(data, xbar, d, f_ell)

    @property
    def ell(self) -> int:
        return self.xbar.shape[0]

    def _sqdist(self, y):
        diff = self.data.points - check_point(y, self.data.n)
        return np.einsum("ij,ij->i", diff, diff)

    def _mean(self, values):
        return float(np.sum(self.data.weights * values)) / self.data.total_weight

    def objective(self, y) -> float:
        """``g(y)``: the objective after adding ``y`` as a new centroid."""
        return self._mean(np.minimum(self.d, self._sqdist(y)))

    def dc_parts(self, y):
        """Convex pieces ``(g1, g2)`` with ``g = g1 - g2``.

        ``g1`` is smooth (a constant plus a quadratic); ``g2`` is the
        piecewise-quadratic ``mean_i max(d_i, |y - a_i|^2)``.
        """
        dist = self._sqdist(y)
        g1 = self.f_ell + self._mean(dist)
        g2 = self._mean(np.maximum(self.d, dist))
        return g1, g2

    def in_y1(self, y) -> bool:
        """True when ``y`` is strictly closer to some point than that point's centroid."""
        return bool(np.any(self._sqdist(y) < self.d))

    def partition(self, y):
        """Boolean masks ``(A1, A2)``: points attracted by ``y`` and the rest."""
        closer = self._sqdist(y) < self.d
        return closer, ~closer

    def decrease(self, y) -> float:
        """``z(y) = f_ell - g(y)``, computed as ``mean_i max(0, d_i - |y - a_i|^2)``."""
        return self._mean(np.maximum(0.0, self.d - self._sqdist(y)))

    def attracted_barycenter(self, y):
        """Barycenter of the points strictly closer to ``y`` than to their centroid."""
        closer, _ = self.partition(y)
        if not closer.any():
            raise ValueError("y attracts no data point (y is not in Y1)")
        return barycenter(self.data.points[closer], self.data.weights[closer])

    def decrease_many(self, Y):
        """Vectorised :meth:`decrease` over the rows of ``Y``."""
        Y = check_centroids(Y, self.data.n, name="Y")
        out = np.empty(Y.shape[0])
        for start in range(0, Y.shape[0], _BLOCK):
            block = Y[start:start + _BLOCK]
            gain = np.maximum(0.0, self.d[None, :] - sq_distances(block, self.data.points))
            out[start:start + _BLOCK] = (gain * self.data.weights).sum(axis=1)
        return out / self.data.total_weight

    def objective_many(self, Y):
        Y = check_centroids(Y, self.data.n, name="Y")
        out = np.empty(Y.shape[0])
        for start in range(0, Y.shape[0], _BLOCK):
            block = Y[start:start + _BLOCK]
            vals = np.minimum(self.d[None, :], sq_distances(block, self.data.points))
            out[start:start + _BLOCK] = (vals * self.data.weights).sum(axis=1)
        return out / self.data.total_weight


def build_context(data, xbar) -> AuxContext:
    return AuxContext.build(data, xbar)
