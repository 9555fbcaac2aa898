"""Shared independent oracles for the test suite.

These deliberately recompute quantities by direct definition (chord sums,
exhaustive enumeration, high-precision special functions) so they stay
independent of the library code paths they check.
"""

from __future__ import annotations

import itertools

import numpy as np


def chord_error(values: np.ndarray, i0: int, i1: int) -> float:
    """Squared deviation of the samples strictly between i0 and i1 from the
    straight line joining (i0, values[i0]) and (i1, values[i1])."""
    t0, t1 = values[i0], values[i1]
    length = i1 - i0
    err = 0.0
    for i in range(i0 + 1, i1):
        line = t0 + (t1 - t0) * (i - i0) / length
        err += (line - values[i]) ** 2
    return err


def brute_force_1d_wcss(values, k: int) -> float:
    """Minimum within-cluster sum of squares over every split of the sorted
    values into k contiguous groups (optimal 1-D clusters are contiguous in
    sorted order). Pure-Python direct summation."""
    vals = sorted(float(v) for v in values)
    n = len(vals)
    best = float("inf")
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = [0, *cuts, n]
        wcss = 0.0
        for a, b in zip(bounds[:-1], bounds[1:]):
            seg = vals[a:b]
            mean = sum(seg) / len(seg)
            wcss += sum((v - mean) ** 2 for v in seg)
        best = min(best, wcss)
    return best


def brute_force_1d_partition(values: np.ndarray, k: int):
    """Like brute_force_1d_wcss but also returns the per-cluster max variance
    of a WCSS-optimal split."""
    vals = np.sort(np.asarray(values, dtype=float))
    n = vals.size
    best = (np.inf, None)
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = [0, *cuts, n]
        wcss = 0.0
        max_var = 0.0
        for a, b in zip(bounds[:-1], bounds[1:]):
            seg = vals[a:b]
            ss = float(np.sum((seg - seg.mean()) ** 2))
            wcss += ss
            max_var = max(max_var, ss / seg.size)
        if wcss < best[0]:
            best = (wcss, max_var)
    return best


def dtw_brute(a, b) -> float:
    """Minimum over all monotone warping paths of the summed squared
    differences, explored by plain recursion (no memoization, so it shares
    nothing with the dynamic program it checks)."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)

    def walk(i: int, j: int) -> float:
        cost = (x[i] - y[j]) ** 2
        if i == 0 and j == 0:
            return cost
        options = []
        if i > 0:
            options.append(walk(i - 1, j))
        if j > 0:
            options.append(walk(i, j - 1))
        if i > 0 and j > 0:
            options.append(walk(i - 1, j - 1))
        return cost + min(options)

    return float(np.sqrt(walk(x.size - 1, y.size - 1)))


def inverse_normal_cdf(p: float) -> float:
    """High-precision standard-normal quantile via mpmath's erfinv."""
    import mpmath

    mpmath.mp.dps = 40
    return float(mpmath.sqrt(2) * mpmath.erfinv(2 * mpmath.mpf(p) - 1))


def naive_substring_count(source: str, w: str) -> int:
    return sum(1 for i in range(len(source) - len(w) + 1) if source[i : i + len(w)] == w)
