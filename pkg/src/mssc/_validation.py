"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import numpy as np


def check_points(X, *, name="X"):
    """Return ``X`` as a C-contiguous float64 array of shape (m, n).

    A 1-D input is read as m points on the line.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {X.shape}")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"{name} must contain at least one point of dimension >= 1, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return np.ascontiguousarray(X)


def check_centroids(centers, n_features, *, name="centers"):
    centers = np.asarray(centers, dtype=np.float64)
    if centers.ndim == 1:
        centers = centers.reshape(1, -1) if n_features > 1 else centers.reshape(-1, 1)
    if centers.ndim != 2 or centers.shape[0] < 1:
        raise ValueError(f"{name} must have shape (n_centers, n_features), got {centers.shape}")
    if centers.shape[1] != n_features:
        raise ValueError(
            f"{name} has {centers.shape[1]} features but the data has {n_features}"
        )
    if not np.all(np.isfinite(centers)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return np.ascontiguousarray(centers)


def check_point(y, n_features, *, name="y"):
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if y.shape[0] != n_features:
        raise ValueError(f"{name} has {y.shape[0]} coordinates, expected {n_features}")
    if not np.all(np.isfinite(y)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return y


def check_weights(weights, n_samples):
    if weights is None:
        return np.ones(n_samples, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64).reshape(-1)
    if w.shape[0] != n_samples:
        raise ValueError(f"weights has length {w.shape[0]}, expected {n_samples}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValueError("weights must be finite and strictly positive")
    return w
