"""SAX and 1d-SAX symbolization with matching reconstructions.

Both baselines cut the series into fixed-width segments and quantize
per-segment statistics against standard-normal breakpoints: SAX uses segment
means alone, 1d-SAX an ordinary-least-squares line per segment, quantizing
the line's mean against N(0, 1) and its slope against N(0, sigma_s^2) with
sigma_s^2 = slope_variance_scale / w. Reconstruction emits the region
representative, chosen at the probability midpoint of each region.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .digitization import symbol_alphabet
from .preprocessing import validate_series


@dataclass(frozen=True)
class SaxConfig:
    segment_len: int
    k: int = 9

    def __post_init__(self):
        if self.segment_len < 1:
            raise ValueError(f"segment_len must be >= 1, got {self.segment_len}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")


@dataclass(frozen=True)
class OneDSaxConfig:
    segment_len: int
    k_mean: int = 3
    k_slope: int = 3
    slope_variance_scale: float = 0.03

    def __post_init__(self):
        if self.segment_len < 1:
            raise ValueError(f"segment_len must be >= 1, got {self.segment_len}")
        if self.k_mean < 2 or self.k_slope < 2:
            raise ValueError("k_mean and k_slope must each be >= 2")
        if self.slope_variance_scale <= 0:
            raise ValueError("slope_variance_scale must be positive")

    @property
    def k_total(self) -> int:
        return self.k_mean * self.k_slope


def gaussian_breakpoints(k: int) -> np.ndarray:
    """Ascending standard-normal quantiles at i/k, i = 1..k-1, splitting the
    bell curve into k equal-probability regions."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return norm.ppf(np.arange(1, k) / k)


def region_representatives(k: int) -> np.ndarray:
    """One value per region: the quantile at the region's probability midpoint."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return norm.ppf((np.arange(k) + 0.5) / k)


def _region_indices(values: np.ndarray, breakpoints: np.ndarray) -> np.ndarray:
    return np.searchsorted(breakpoints, values, side="right")


def _segments(series: np.ndarray, w: int) -> np.ndarray:
    """Truncate to a whole number of segments and reshape to (n_seg, w)."""
    n_seg = series.size // w
    if n_seg == 0:
        raise ValueError(f"series of length {series.size} is shorter than one segment ({w})")
    return series[: n_seg * w].reshape(n_seg, w)


def sax_symbolize(series, config: SaxConfig) -> str:
    """One symbol per segment: the segment mean mapped through the breakpoints."""
    arr = validate_series(series)
    means = _segments(arr, config.segment_len).mean(axis=1)
    regions = _region_indices(means, gaussian_breakpoints(config.k))
    alphabet = symbol_alphabet(config.k)
    return "".join(alphabet[r] for r in regions)


def sax_reconstruct(symbols: str, config: SaxConfig, original_length: int) -> np.ndarray:
    """Piecewise-constant series at the region representatives; length is the
    truncated original length, one segment of w samples per symbol."""
    alphabet = symbol_alphabet(config.k)
    index = {c: i for i, c in enumerate(alphabet)}
    reps = region_representatives(config.k)
    w = config.segment_len
    n_seg = original_length // w
    if n_seg != len(symbols):
        raise ValueError(
            f"{len(symbols)} symbols cannot cover {original_length} samples at w={w}"
        )
    try:
        levels = np.array([reps[index[c]] for c in symbols])
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]!r} outside the {config.k}-letter alphabet") from None
    return np.repeat(levels, w)


def _ols_line(segment: np.ndarray) -> tuple[float, float]:
    """Least-squares (mean, slope) of a segment on the centered index grid.

    The fitted line's average over the segment equals the segment mean, so the
    pair fully describes the regression line."""
    w = segment.size
    if w == 1:
        return float(segment[0]), 0.0
    x = np.arange(w) - (w - 1) / 2.0
    mean = float(segment.mean())
    slope = float(np.dot(x, segment - mean) / np.dot(x, x))
    return mean, slope


def onedsax_symbolize(series, config: OneDSaxConfig) -> str:
    """One symbol per segment encoding (mean region, slope region)."""
    arr = validate_series(series)
    segments = _segments(arr, config.segment_len)
    mean_bps = gaussian_breakpoints(config.k_mean)
    sigma_s = np.sqrt(config.slope_variance_scale / config.segment_len)
    slope_bps = sigma_s * gaussian_breakpoints(config.k_slope)
    alphabet = symbol_alphabet(config.k_total)
    out = []
    for seg in segments:
        mean, slope = _ols_line(seg)
        mi = int(_region_indices(np.array([mean]), mean_bps)[0])
        si = int(_region_indices(np.array([slope]), slope_bps)[0])
        out.append(alphabet[mi * config.k_slope + si])
    return "".join(out)


def onedsax_reconstruct(symbols: str, config: OneDSaxConfig, original_length: int) -> np.ndarray:
    """Per segment, the regression line rebuilt from the region-representative
    mean and slope."""
    alphabet = symbol_alphabet(config.k_total)
    index = {c: i for i, c in enumerate(alphabet)}
    w = config.segment_len
    n_seg = original_length // w
    if n_seg != len(symbols):
        raise ValueError(
            f"{len(symbols)} symbols cannot cover {original_length} samples at w={w}"
        )
    mean_reps = region_representatives(config.k_mean)
    sigma_s = np.sqrt(config.slope_variance_scale / w)
    slope_reps = sigma_s * region_representatives(config.k_slope)
    x = np.arange(w) - (w - 1) / 2.0
    out = np.empty(n_seg * w)
    for i, c in enumerate(symbols):
        code = index.get(c)
        if code is None:
            raise ValueError(f"symbol {c!r} outside the {config.k_total}-letter alphabet")
        mi, si = divmod(code, config.k_slope)
        out[i * w : (i + 1) * w] = mean_reps[mi] + slope_reps[si] * x
    return out
