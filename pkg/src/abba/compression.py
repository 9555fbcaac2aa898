"""Greedy adaptive piecewise-linear-continuous approximation of a time series.

A series is reduced to its first value plus a chain of ``(length, increment)``
tuples. Each piece is the longest chord (starting from the previous
breakpoint) whose interior squared deviation from the straight line stays
within ``(length - 1) * tol**2``; the chord passes exactly through both
endpoints, so endpoint residuals are zero by construction and excluded from
the sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .preprocessing import validate_series


class Piece(NamedTuple):
    length: int
    inc: float


@dataclass(frozen=True)
class CompressionConfig:
    tol: float = 0.1
    max_len: int | None = None  # None = unbounded

    def __post_init__(self):
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise ValueError(f"tol must be a positive finite real, got {self.tol}")
        if self.max_len is not None and self.max_len < 1:
            raise ValueError(f"max_len must be >= 1, got {self.max_len}")


@dataclass(frozen=True)
class PieceSequence:
    """Compressed form: start value plus parallel (length, increment) arrays.

    Invariants: lengths are positive integers summing to ``original_length``,
    and ``start_value + sum(increments)`` reproduces the final sample of the
    source series up to floating accumulation.
    """

    start_value: float
    lengths: np.ndarray
    increments: np.ndarray
    original_length: int

    def __post_init__(self):
        lengths = np.asarray(self.lengths, dtype=int)
        increments = np.asarray(self.increments, dtype=float)
        if lengths.shape != increments.shape or lengths.ndim != 1:
            raise ValueError("lengths and increments must be parallel 1-D arrays")
        if lengths.size and lengths.min() < 1:
            raise ValueError("piece lengths must be >= 1")
        if int(lengths.sum()) != self.original_length:
            raise ValueError(
                f"piece lengths sum to {int(lengths.sum())}, expected {self.original_length}"
            )
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "increments", increments)

    def __len__(self) -> int:
        return int(self.lengths.size)

    def pieces(self) -> list[Piece]:
        return [Piece(int(l), float(i)) for l, i in zip(self.lengths, self.increments)]


def compress(series, config: CompressionConfig) -> PieceSequence:
    """Greedy left-to-right segmentation of ``series`` under ``config.tol``.

    Each piece is extended one sample at a time while the interior
    squared-deviation bound holds; the scan stops at the first violating
    extension (or at ``max_len`` / the end of the series). A single-sample
    piece always satisfies the bound, so the chain always reaches the final
    sample.
    """
    t = validate_series(series)
    n_samples = t.size
    tol_sq = config.tol * config.tol
    max_len = config.max_len if config.max_len is not None else n_samples

    lengths: list[int] = []
    increments: list[float] = []
    start = 0
    while start < n_samples - 1:
        t0 = t[start]
        limit = min(max_len, n_samples - 1 - start)
        # Running sums over offsets j = 0..L of d_j = t[start+j] - t0:
        #   s1 = sum(j * d_j), s2 = sum(d_j^2).
        # The chord error for a piece of length L is then
        #   inc^2 * (L+1)(2L+1) / (6L) - 2 * inc * s1 / L + s2,  inc = d_L,
        # which makes each candidate extension O(1).
        s1 = 0.0
        s2 = 0.0
        best = 1
        for cand in range(1, limit + 1):
            d = t[start + cand] - t0
            s1 += cand * d
            s2 += d * d
            if cand > 1:  # a single step has no interior points, so zero error
                err = d * d * (cand + 1) * (2 * cand + 1) / (6.0 * cand) - 2.0 * d * s1 / cand + s2
                if err > (cand - 1) * tol_sq:
                    break
            best = cand
        lengths.append(best)
        increments.append(float(t[start + best] - t0))
        start += best

    return PieceSequence(
        start_value=float(t[0]),
        lengths=np.array(lengths, dtype=int),
        increments=np.array(increments, dtype=float),
        original_length=n_samples - 1,
    )


def compression_error_bound(series_length: int, n_pieces: int, tol: float) -> float:
    """Guaranteed Euclidean distance between a series of length N+1 and its
    chain of n pieces: sqrt((N - n) * tol**2)."""
    if not 1 <= n_pieces <= series_length:
        raise ValueError(
            f"n_pieces must satisfy 1 <= n <= N, got n={n_pieces}, N={series_length}"
        )
    return math.sqrt((series_length - n_pieces) * tol * tol)


def chain_points(pieces: PieceSequence) -> list[tuple[int, float]]:
    """Breakpoints (index, value) of the polygonal chain, including the start."""
    points = [(0, pieces.start_value)]
    idx = 0
    val = pieces.start_value
    for length, inc in zip(pieces.lengths, pieces.increments):
        idx += int(length)
        val += float(inc)
        points.append((idx, val))
    return points


def evaluate_chain(pieces: PieceSequence) -> np.ndarray:
    """Pointwise values of the polygonal chain on the full 0..N grid."""
    pts = chain_points(pieces)
    xp = np.array([p[0] for p in pts], dtype=float)
    fp = np.array([p[1] for p in pts], dtype=float)
    if xp.size == 1:
        return fp.copy()
    return np.interp(np.arange(pieces.original_length + 1, dtype=float), xp, fp)
