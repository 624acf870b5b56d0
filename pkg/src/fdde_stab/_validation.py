"""Small input-validation helpers shared across the package."""

from __future__ import annotations

import math

import numpy as np


def check_alpha(alpha) -> float:
    """Validate a fractional order, returning it as a plain float."""
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0) or not math.isfinite(alpha):
        raise ValueError(f"fractional order must lie in (0, 1], got {alpha!r}")
    return alpha


def check_finite(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_nonnegative(name: str, value) -> float:
    value = check_finite(name, value)
    if value < 0.0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")
    return value


def check_positive(name: str, value) -> float:
    value = check_finite(name, value)
    if value <= 0.0:
        raise ValueError(f"{name} must be > 0, got {value!r}")
    return value


def check_point_array(X) -> np.ndarray:
    """Coerce ``X`` to a float array of shape (n, 2) of finite (a, b) rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1 and X.size == 2:
        X = X.reshape(1, 2)
    if X.ndim != 2 or X.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of (a, b) points, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("coefficient points must be finite")
    return X
