"""Input validation helpers shared across the package."""

import numpy as np

__all__ = [
    "check_distribution",
    "check_channel",
    "check_counts",
    "check_square_symmetric",
]


def check_distribution(P, tol=1e-12, name="distribution"):
    """Validate a probability array: nonnegative entries summing to 1."""
    arr = np.asarray(P, dtype=float)
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinity")
    if np.any(arr < 0):
        raise ValueError(f"{name} has negative entries")
    total = arr.sum()
    if abs(total - 1.0) > tol:
        raise ValueError(f"{name} sums to {total!r}, expected 1 within {tol}")
    return arr


def check_channel(K, tol=1e-9, name="channel"):
    """Validate a column-stochastic kernel (each column sums to 1)."""
    arr = np.asarray(K, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-d matrix")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinity")
    if np.any(arr < 0):
        raise ValueError(f"{name} has negative entries")
    sums = arr.sum(axis=0)
    if np.any(np.abs(sums - 1.0) > tol):
        raise ValueError(f"{name} columns must sum to 1 (got {sums!r})")
    return arr


def check_counts(B, name="counts"):
    """Validate a nonnegative integer count matrix (float storage allowed)."""
    arr = np.asarray(B, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-d matrix")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinity")
    if np.any(arr < 0):
        raise ValueError(f"{name} has negative entries")
    if np.any(np.abs(arr - np.round(arr)) > 1e-9):
        raise ValueError(f"{name} entries must be integers")
    return np.round(arr)


def check_square_symmetric(A, tol=0.0, name="adjacency"):
    """Validate a square symmetric nonnegative matrix."""
    arr = np.asarray(A, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinity")
    if np.any(arr < 0):
        raise ValueError(f"{name} has negative entries")
    if np.any(np.abs(arr - arr.T) > tol):
        raise ValueError(f"{name} must be symmetric")
    return arr
