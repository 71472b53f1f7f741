"""scikit-learn compatible estimators wrapping the functional API."""

from __future__ import annotations

from numbers import Integral, Real

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin, _fit_context
from sklearn.utils._param_validation import Interval, StrOptions
from sklearn.utils.validation import _check_sample_weight, check_is_fitted, validate_data

from .core import ControlParams, DataSet, dedup, natural_clustering, sq_distances
from .incremental import algorithm1, algorithm2, recommend_gammas
from .kmeans import km_run

__all__ = ["IncrementalKMeans", "LloydKMeans"]


class _CentroidPredictorMixin:
    """predict / transform / score shared by the estimators below."""

    def predict(self, X):
        """Index of the nearest centroid, ties going to the lowest index."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False, dtype=np.float64)
        return natural_clustering(X, self.cluster_centers_).labels

    def transform(self, X):
        """Euclidean distance of every sample to every centroid."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False, dtype=np.float64)
        return np.sqrt(sq_distances(X, self.cluster_centers_))

    def score(self, X, y=None, sample_weight=None):
        """Opposite of the sum of squared distances to the nearest centroid."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False, dtype=np.float64)
        sample_weight = _check_sample_weight(sample_weight, X)
        d = sq_distances(X, self.cluster_centers_).min(axis=1)
        return -float(np.sum(sample_weight * d))

    def _set_fit_attributes(self, data, centers):
        assignment = natural_clustering(data, centers)
        self.cluster_centers_ = centers
        self.labels_ = assignment.labels
        d = sq_distances(data.points, centers).min(axis=1)
        self.inertia_ = float(np.sum(data.weights * d))
        self.objective_ = self.inertia_ / data.total_weight


class IncrementalKMeans(_CentroidPredictorMixin, ClusterMixin, TransformerMixin, BaseEstimator):
    """Incremental minimum sum-of-squares clustering.

    Starts from the barycenter of the data and adds one centroid at a time.
    Candidates for the new centroid are data points (and the barycenters of
    the points they attract) that lower the objective by at least a fraction
    of the best achievable decrease; each candidate start is refined with
    k-means and the best refined system is kept.

    Parameters
    ----------
    n_clusters : int, default=8
        Must not exceed the number of distinct samples.
    variant : {1, 2}, default=2
        ``2`` keeps the k-means refinements directly and always returns
        pairwise distinct centroids; ``1`` re-runs k-means from the frozen
        centroids plus each retained new component.
    gammas : tuple of three floats or 'auto', default='auto'
        ``(gamma1, gamma2, gamma3)`` with ``gamma1, gamma2`` in [0, 1] and
        ``gamma3 >= 1``. ``'auto'`` picks a triple from the number of
        distinct samples.
    reduce : bool, default=False
        Restrict first-stage candidates to points far from their centroid.
    delta : float, default=None
        Width used by the reduction; ``None`` means ``min(1e-3, 1/l)``.
    reduction_threshold : {'gamma', 'eta'}, default='gamma'
    tol : float, default=0.0
        k-means stops when no centroid moves farther than ``tol``.
    max_iter : int, default=1000
        Iteration cap of every k-means run.
    n_jobs : int, default=None
        Threads for the independent k-means runs of one level.

    Attributes
    ----------
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
    labels_ : ndarray of shape (n_samples,)
    inertia_ : float
        Weighted sum of squared distances to the nearest centroid.
    objective_ : float
        ``inertia_`` divided by the total sample weight.
    gammas_ : tuple
        Resolved control triple.
    n_iter_ : int
        Total k-means iterations over all levels.
    trace_ : RunTrace
    n_features_in_ : int

    Examples
    --------
    >>> import numpy as np
    >>> from mssc import IncrementalKMeans
    >>> X = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    >>> km = IncrementalKMeans(n_clusters=2).fit(X)
    >>> round(km.objective_, 6)
    0.166667
    """

    _parameter_constraints = {
        "n_clusters": [Interval(Integral, 1, None, closed="left")],
        "variant": [Interval(Integral, 1, 2, closed="both")],
        "gammas": [StrOptions({"auto"}), tuple, list],
        "reduce": ["boolean"],
        "delta": [None, Interval(Real, 0, 1, closed="neither")],
        "reduction_threshold": [StrOptions({"gamma", "eta"})],
        "tol": [Interval(Real, 0, None, closed="left")],
        "max_iter": [Interval(Integral, 1, None, closed="left")],
        "n_jobs": [None, Interval(Integral, 1, None, closed="left")],
    }

    def __init__(
        self,
        n_clusters=8,
        *,
        variant=2,
        gammas="auto",
        reduce=False,
        delta=None,
        reduction_threshold="gamma",
        tol=0.0,
        max_iter=1000,
        n_jobs=None,
    ):
        self.n_clusters = n_clusters
        self.variant = variant
        self.gammas = gammas
        self.reduce = reduce
        self.delta = delta
        self.reduction_threshold = reduction_threshold
        self.tol = tol
        self.max_iter = max_iter
        self.n_jobs = n_jobs

    @_fit_context(prefer_skip_nested_validation=True)
    def fit(self, X, y=None, sample_weight=None):
        X = validate_data(self, X, dtype=np.float64)
        sample_weight = _check_sample_weight(sample_weight, X)
        data = DataSet(X, sample_weight)
        n_distinct = dedup(data).m
        if self.n_clusters > n_distinct:
            raise ValueError(
                f"n_clusters={self.n_clusters} exceeds the number of distinct samples ({n_distinct})"
            )
        if isinstance(self.gammas, str):
            gammas = recommend_gammas(n_distinct)
        else:
            gammas = tuple(float(g) for g in self.gammas)
            if len(gammas) != 3:
                raise ValueError(f"gammas must have three entries, got {len(gammas)}")
        params = ControlParams(
            *gammas,
            delta=self.delta,
            reduce=self.reduce,
            reduction_threshold=self.reduction_threshold,
            tol_conv=self.tol,
            max_iter=self.max_iter,
            n_jobs=self.n_jobs or 1,
        )
        if self.variant == 1:
            centers, trace = algorithm1(data, self.n_clusters, params)
        else:
            centers, _, trace = algorithm2(data, self.n_clusters, params)
        self._set_fit_attributes(data, centers)
        self.gammas_ = gammas
        self.trace_ = trace
        self.n_iter_ = sum(lv.km_iterations for lv in trace.levels)
        return self


class LloydKMeans(_CentroidPredictorMixin, ClusterMixin, TransformerMixin, BaseEstimator):
    """k-means from a given starting system, empty clusters left in place.

    Parameters
    ----------
    n_clusters : int, default=8
    init : array-like of shape (n_clusters, n_features) or 'first', default='first'
        Starting centroids. ``'first'`` takes the first ``n_clusters``
        distinct samples.
    tol : float, default=0.0
    max_iter : int, default=1000

    Attributes
    ----------
    cluster_centers_, labels_, inertia_, objective_ : see :class:`IncrementalKMeans`
    n_iter_ : int
    converged_ : bool
    """

    _parameter_constraints = {
        "n_clusters": [Interval(Integral, 1, None, closed="left")],
        "init": [StrOptions({"first"}), "array-like"],
        "tol": [Interval(Real, 0, None, closed="left")],
        "max_iter": [Interval(Integral, 1, None, closed="left")],
    }

    def __init__(self, n_clusters=8, *, init="first", tol=0.0, max_iter=1000):
        self.n_clusters = n_clusters
        self.init = init
        self.tol = tol
        self.max_iter = max_iter

    @_fit_context(prefer_skip_nested_validation=True)
    def fit(self, X, y=None, sample_weight=None):
        X = validate_data(self, X, dtype=np.float64)
        sample_weight = _check_sample_weight(sample_weight, X)
        data = DataSet(X, sample_weight)
        if isinstance(self.init, str):
            distinct = dedup(DataSet(X)).points
            if distinct.shape[0] < self.n_clusters:
                raise ValueError(
                    f"n_clusters={self.n_clusters} exceeds the number of distinct samples"
                )
            x0 = distinct[: self.n_clusters]
        else:
            x0 = np.asarray(self.init, dtype=np.float64)
            if x0.shape != (self.n_clusters, X.shape[1]):
                raise ValueError(
                    f"init has shape {x0.shape}, expected {(self.n_clusters, X.shape[1])}"
                )
        result = km_run(data, x0, self.tol, self.max_iter)
        self._set_fit_attributes(data, result.centers)
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self
