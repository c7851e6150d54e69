"""Input validation helpers shared by the public entry points."""

from __future__ import annotations

import numpy as np


def check_values(values, name: str = "values", min_length: int = 1) -> np.ndarray:
    """Coerce to a finite 1-D float64 array.

    Parameters
    ----------
    values : array-like
        Candidate sample sequence.
    name : str
        Argument name used in error messages.
    min_length : int
        Minimum number of samples required.

    Returns
    -------
    np.ndarray
        New float64 array, never a view on the input.
    """
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.size < min_length:
        raise ValueError(f"{name} needs at least {min_length} samples, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"{name} contains a non-finite sample at index {bad}")
    return arr


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    """Validate an integer argument with a lower bound."""
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_matrix(matrix, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite square 2-D float64 array."""
    arr = np.asarray(matrix, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr
