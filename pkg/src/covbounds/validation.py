"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from covbounds.exceptions import (
    DimensionMismatchError,
    EmptyInputError,
    NonFiniteError,
    NotOnSimplexError,
)

# Relative part of the default comparison tolerance used throughout.
REL_TOL = 1e-12

SIMPLEX_TOL = 1e-12


def near_equal(x: float, y: float, tol: float = REL_TOL) -> bool:
    """Absolute-plus-relative equality: |x-y| <= tol*(1+|x|+|y|)."""
    return abs(x - y) <= tol * (1.0 + abs(x) + abs(y))


def as_vector(x, name: str, min_len: int = 1) -> np.ndarray:
    """Coerce to a finite 1-D float array of length >= min_len."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < min_len:
        raise EmptyInputError(f"{name} needs at least {min_len} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def as_square_matrix(x, name: str, size: int | None = None) -> np.ndarray:
    """Coerce to a finite square 2-D float array, optionally of a given size."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {arr.shape}")
    if size is not None and arr.shape[0] != size:
        raise DimensionMismatchError(f"{name} must be {size}x{size}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def check_simplex(lam, k: int, tol: float = SIMPLEX_TOL) -> np.ndarray:
    """Validate mixture weights: length k, entries >= -tol, sum within tol of 1."""
    arr = np.atleast_1d(np.asarray(lam, dtype=float))
    if arr.shape != (k,):
        raise NotOnSimplexError(f"weights must have length {k}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NotOnSimplexError("weights contain non-finite entries")
    if np.min(arr) < -tol:
        raise NotOnSimplexError(f"weights must be nonnegative, min is {np.min(arr)}")
    if abs(arr.sum() - 1.0) > tol:
        raise NotOnSimplexError(f"weights must sum to 1, got {arr.sum()!r}")
    return arr


def same_length(*pairs) -> None:
    """Raise unless all named vectors share one length.

    Arguments are (name, array) tuples.
    """
    lengths = {name: len(arr) for name, arr in pairs}
    if len(set(lengths.values())) > 1:
        raise DimensionMismatchError(f"length mismatch: {lengths}")


def readonly(arr: np.ndarray) -> np.ndarray:
    """Return a non-writeable copy so frozen dataclasses stay immutable."""
    out = np.array(arr, dtype=float, copy=True)
    out.flags.writeable = False
    return out
