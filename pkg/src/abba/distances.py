"""Distance measures for comparing a series against its reconstruction.

Four kinds: plain and differenced Euclidean, plain and differenced dynamic
time warping. DTW aggregates squared pointwise differences over the best
monotone warping path and takes a final square root, so on equal-length
inputs the diagonal path reproduces the Euclidean distance and
dtw(a, b) <= euclid(a, b).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .preprocessing import difference

DISTANCE_KINDS = ("euclid", "dtw", "euclid_diff", "dtw_diff")


def euclid(a, b) -> float:
    """Euclidean distance between equal-length series."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return float(np.sqrt(np.sum((x - y) ** 2)))


@njit(cache=True)
def _dtw_sq(x, y):  # pragma: no cover - compiled
    n = x.size
    m = y.size
    prev = np.empty(m + 1)
    curr = np.empty(m + 1)
    for j in range(m + 1):
        prev[j] = np.inf
    prev[0] = 0.0
    for i in range(1, n + 1):
        curr[0] = np.inf
        for j in range(1, m + 1):
            d = x[i - 1] - y[j - 1]
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if curr[j - 1] < best:
                best = curr[j - 1]
            curr[j] = d * d + best
        prev, curr = curr, prev
    return prev[m]


def dtw(a, b) -> float:
    """Dynamic time warping distance: unconstrained full dynamic program with
    match/insert/delete steps; inputs may differ in length."""
    x = np.ascontiguousarray(a, dtype=float)
    y = np.ascontiguousarray(b, dtype=float)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("dtw expects 1-D inputs")
    if x.size == 0 or y.size == 0:
        raise ValueError("dtw inputs must be nonempty")
    return math.sqrt(float(_dtw_sq(x, y)))


def differenced(kind: str, a, b) -> float:
    """Apply first differencing to both inputs, then the base measure."""
    if kind == "euclid":
        return euclid(difference(a), difference(b))
    if kind == "dtw":
        return dtw(difference(a), difference(b))
    raise ValueError(f"unknown base distance {kind!r}")


def distance(kind: str, a, b) -> float:
    """Dispatch on one of DISTANCE_KINDS."""
    if kind == "euclid":
        return euclid(a, b)
    if kind == "dtw":
        return dtw(a, b)
    if kind == "euclid_diff":
        return differenced("euclid", a, b)
    if kind == "dtw_diff":
        return differenced("dtw", a, b)
    raise ValueError(f"unknown distance kind {kind!r}; expected one of {DISTANCE_KINDS}")
