"""Normalization and differencing applied before symbolization or distance measurement."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class Normalized(NamedTuple):
    """Result of z-normalizing a series.

    ``degenerate`` is set for constant input, in which case ``values`` is the
    all-zero series and ``std`` is reported as 0.
    """

    values: np.ndarray
    mean: float
    std: float
    degenerate: bool


def validate_series(values) -> np.ndarray:
    """Coerce to a 1-D float array and check the time-series invariants.

    Raises ValueError on non-finite entries or fewer than two samples.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"time series must be 1-D, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError(f"time series needs at least 2 samples, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series contains NaN or infinite values")
    return arr


def normalize(series) -> Normalized:
    """Shift and scale a series to zero mean and unit (population) variance.

    Constant series are legal input: they come back as all zeros with
    ``std == 0`` and ``degenerate=True`` rather than raising.
    """
    arr = validate_series(series)
    mean = float(arr.mean())
    std = float(arr.std())  # population (divide-by-n) standard deviation
    if std == 0.0:
        return Normalized(np.zeros_like(arr), mean, 0.0, True)
    return Normalized((arr - mean) / std, mean, std, False)


def denormalize(values, mean: float, std: float) -> np.ndarray:
    """Undo :func:`normalize` using the stored mean and standard deviation."""
    arr = np.asarray(values, dtype=float)
    if std == 0.0:
        return np.full_like(arr, mean)
    return arr * std + mean


def difference(series) -> np.ndarray:
    """First differences: output[i] = values[i+1] - values[i], length N."""
    arr = validate_series(series)
    return np.diff(arr)
