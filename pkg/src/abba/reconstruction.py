"""Inversion of the symbolic form back to a pointwise series.

Three stages: replace each symbol by its cluster center, realign the
real-valued center lengths with the integer grid by carry rounding, then
stitch the pieces into a piecewise-linear series. Because the centers are
cluster means, the accumulated deviations cancel at the final sample: the
reconstruction is pinned to the original start and end values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .compression import PieceSequence
from .digitization import SymbolicSeries


@dataclass(frozen=True)
class QuantizedPieces:
    start_value: float
    lengths: np.ndarray  # positive integers
    increments: np.ndarray

    def __post_init__(self):
        lengths = np.asarray(self.lengths, dtype=int)
        increments = np.asarray(self.increments, dtype=float)
        if lengths.size and lengths.min() < 1:
            raise ValueError("quantized lengths must be >= 1")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "increments", increments)

    @property
    def total_length(self) -> int:
        return int(self.lengths.sum())


def inverse_digitize(symbolic: SymbolicSeries) -> np.ndarray:
    """Per-symbol (length, increment) pairs, each the unscaled center of the
    symbol's cluster. Shape (n, 2), lengths still real-valued."""
    model = symbolic.model
    assignments = model.assignments
    if len(symbolic.symbols) != assignments.size:
        raise ValueError("symbol string and model assignments disagree in length")
    return model.centers[assignments].copy()


def _round_half_away(v: float) -> int:
    return int(math.copysign(math.floor(abs(v) + 0.5), v))


def quantize_pieces(
    tuples: np.ndarray, start_value: float, target_total: int | None = None
) -> QuantizedPieces:
    """Carry rounding of real-valued lengths to integers, preserving the total.

    Round the first length, push the rounding error into the next, repeat. A
    rounded length below 1 is clamped to 1 with the deficit carried onward.
    Surplus samples that survive the last piece are first shaved off pieces
    that can spare them (right to left); only when every piece is already at
    unit length are trailing pieces dropped with their increments merged into
    the predecessor. On the normal path, where every center length is >= 1
    and the total is integral, neither repair triggers.

    ``target_total`` overrides the grid total for inputs whose length sum is
    legitimately fractional (sub-series of a jointly fitted model).
    """
    arr = np.asarray(tuples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) tuple array, got shape {arr.shape}")
    raw_lengths = arr[:, 0]
    increments = arr[:, 1]
    total = float(raw_lengths.sum())
    if target_total is None:
        target = _round_half_away(total)
        if abs(total - target) > 1e-6 * max(1.0, abs(total)):
            raise ValueError(f"lengths must sum to an integer, got {total}")
    else:
        target = int(target_total)

    out_lengths: list[int] = []
    out_incs: list[float] = []
    carry = 0.0
    for length, inc in zip(raw_lengths, increments):
        v = length + carry
        r = _round_half_away(v)
        if r < 1:
            r = 1
        carry = v - r
        out_lengths.append(r)
        out_incs.append(float(inc))

    excess = int(sum(out_lengths)) - target
    for i in range(len(out_lengths) - 1, -1, -1):
        if excess <= 0:
            break
        give = min(excess, out_lengths[i] - 1)
        out_lengths[i] -= give
        excess -= give
    while excess > 0 and len(out_lengths) > 1:
        excess -= out_lengths.pop()
        merged = out_incs.pop()
        out_incs[-1] += merged
    deficit = target - int(sum(out_lengths))
    if deficit > 0 and out_lengths:
        out_lengths[-1] += deficit
    return QuantizedPieces(
        start_value=start_value,
        lengths=np.array(out_lengths, dtype=int),
        increments=np.array(out_incs, dtype=float),
    )


def quantize_lengths(lengths) -> list[int]:
    """Carry rounding of lengths alone; see :func:`quantize_pieces`."""
    arr = np.asarray(lengths, dtype=float)
    tuples = np.column_stack([arr, np.zeros_like(arr)])
    return [int(v) for v in quantize_pieces(tuples, 0.0).lengths]


def inverse_compress(quantized: QuantizedPieces) -> np.ndarray:
    """Stitch integer-length pieces into a pointwise series by linear
    interpolation; output has total_length + 1 samples."""
    values = np.empty(quantized.total_length + 1)
    values[0] = quantized.start_value
    pos = 0
    level = quantized.start_value
    for length, inc in zip(quantized.lengths, quantized.increments):
        steps = np.arange(1, length + 1) / length
        values[pos + 1 : pos + length + 1] = level + steps * inc
        pos += int(length)
        level += float(inc)
    return values


def reconstruct(symbolic: SymbolicSeries) -> np.ndarray:
    """Full inversion: centers, quantization, stitching. Output length is
    original_length + 1."""
    tuples = inverse_digitize(symbolic)
    quantized = quantize_pieces(tuples, symbolic.start_value)
    return inverse_compress(quantized)


def bridge_errors(symbolic: SymbolicSeries, pieces: PieceSequence) -> np.ndarray:
    """Accumulated value errors of the reconstruction at the n+1 breakpoints,
    relative to the compressed chain.

    Entry j is the running sum of (center increment - true increment) over
    the first j pieces; entries 0 and n are exactly zero because cluster
    means preserve the increment total.
    """
    if len(symbolic.symbols) != len(pieces):
        raise ValueError("symbolic series and piece sequence disagree in length")
    center_incs = inverse_digitize(symbolic)[:, 1]
    deviations = center_incs - pieces.increments
    return np.concatenate([[0.0], np.cumsum(deviations)])
