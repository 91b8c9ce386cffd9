"""Input validation helpers for the trend estimators.

The estimators accept whatever the wider ecosystem hands them -- lists,
1-D arrays, or single-column 2-D arrays -- and normalise to finite float64
vectors here so the numerical code can assume clean inputs.
"""

from __future__ import annotations

import numpy as np


def as_vector(values, name: str = "array") -> np.ndarray:
    """Coerce to a 1-D float64 array; single-column 2-D input is flattened."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D or a single column, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_xy(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate a regression pair: equal-length finite vectors, distinct x."""
    xv = as_vector(x, "x")
    yv = as_vector(y, "y")
    if xv.size != yv.size:
        raise ValueError(f"x and y must have the same length, got {xv.size} and {yv.size}")
    if np.unique(xv).size != xv.size:
        raise ValueError("x values must be distinct")
    return xv, yv


def require_positive(arr: np.ndarray, name: str) -> np.ndarray:
    if np.any(arr <= 0):
        raise ValueError(f"all {name} values must be positive")
    return arr
