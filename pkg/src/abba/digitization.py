"""Clustering of (length, increment) tuples into a frequency-ordered alphabet.

The number of symbols k is chosen adaptively: scanning k upward from
``min_k``, the first k whose worst per-cluster variance (measured on the
unscaled tuples) drops below a derived tolerance ``tol_s**2`` wins. With
``scl`` equal to 0 or infinity the clustering is one-dimensional and solved
exactly by dynamic programming; for finite nonzero ``scl`` a seeded Lloyd
iteration is used.
"""

from __future__ import annotations

import json
import math
import string
from dataclasses import dataclass, replace

import numpy as np

from .compression import PieceSequence

_ALPHABET_BASE = string.ascii_lowercase + string.ascii_uppercase + string.digits


def symbol_alphabet(k: int) -> str:
    """First k symbol characters, 'a' first; single code point each."""
    if k <= len(_ALPHABET_BASE):
        return _ALPHABET_BASE[:k]
    extra = "".join(chr(0x100 + i) for i in range(k - len(_ALPHABET_BASE)))
    return _ALPHABET_BASE + extra


@dataclass(frozen=True)
class DigitizationConfig:
    scl: float = 0.0  # 0 = cluster increments only, inf = lengths only
    s: float = 0.2
    min_k: int = 1
    max_k: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.scl < 0:
            raise ValueError(f"scl must be >= 0, got {self.scl}")
        if self.s <= 0:
            raise ValueError(f"s must be positive, got {self.s}")
        if not 1 <= self.min_k <= self.max_k:
            raise ValueError(f"need 1 <= min_k <= max_k, got {self.min_k}..{self.max_k}")


@dataclass(frozen=True)
class ClusterModel:
    """Clustering result, already reordered so index 0 is the most frequent
    cluster ('a'), with unscaled centers preserving the weighted totals."""

    k: int
    centers: np.ndarray  # (k, 2) unscaled (mean_len, mean_inc), symbol order
    counts: np.ndarray  # (k,) cluster sizes, symbol order
    assignments: np.ndarray  # (n,) symbol index per piece
    sigma_len: float
    sigma_inc: float
    scl: float
    tol_s: float
    var_len_max: float = math.nan
    var_inc_max: float = math.nan


@dataclass(frozen=True)
class SymbolicSeries:
    symbols: str
    model: ClusterModel
    start_value: float
    original_length: int

    def __len__(self) -> int:
        return len(self.symbols)


def compute_tol_s(tol: float, N: int, n: int, s: float) -> float:
    """Digitization tolerance balancing clustering error against the
    piecewise-linear approximation error: (tol / s) * sqrt(6 (N - n) / (N n))."""
    if not 0 < n < N:
        raise ValueError(f"need 0 < n < N, got n={n}, N={N}")
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    return (tol / s) * math.sqrt(6.0 * (N - n) / (N * n))


def tuple_sigmas(pieces: PieceSequence) -> tuple[float, float]:
    """Population standard deviations of the piece lengths and increments."""
    if len(pieces) == 0:
        raise ValueError("piece sequence is empty")
    return float(np.std(pieces.lengths)), float(np.std(pieces.increments))


def scale_tuples(pieces: PieceSequence, scl: float) -> np.ndarray:
    """Map each tuple to (scl * len / sigma_len, inc / sigma_inc).

    A zero standard deviation (all tuples identical in that coordinate) maps
    the coordinate to 0, which leaves the clustering objective unchanged.
    """
    if not (0 <= scl < math.inf):
        raise ValueError(f"scale_tuples needs finite scl >= 0, got {scl}")
    sigma_len, sigma_inc = tuple_sigmas(pieces)
    lens = pieces.lengths.astype(float)
    incs = pieces.increments
    col_len = scl * lens / sigma_len if sigma_len > 0 else np.zeros_like(lens)
    col_inc = incs / sigma_inc if sigma_inc > 0 else np.zeros_like(incs)
    return np.column_stack([col_len, col_inc])


# ---------------------------------------------------------------------------
# exact 1-D clustering (dynamic program over sorted order)


def _segment_cost(pref: np.ndarray, pref_sq: np.ndarray, i: np.ndarray, j: int):
    """WCSS of sorted slice(s) i..j inclusive, via prefix sums."""
    m = j - i + 1
    tot = pref[j + 1] - pref[i]
    return (pref_sq[j + 1] - pref_sq[i]) - tot * tot / m


class _Kmeans1D:
    """Incremental DP rows for optimal 1-D WCSS partitions of a fixed value set."""

    def __init__(self, values: np.ndarray):
        self.order = np.argsort(values, kind="stable")
        self.sorted_vals = values[self.order]
        self.n = values.size
        self.pref = np.concatenate([[0.0], np.cumsum(self.sorted_vals)])
        self.pref_sq = np.concatenate([[0.0], np.cumsum(self.sorted_vals**2)])
        # rows[r] = optimal WCSS for first i+1 values in r+1 clusters
        self.rows: list[np.ndarray] = []
        self.splits: list[np.ndarray] = []

    def _extend_rows(self, k: int) -> None:
        n = self.n
        while len(self.rows) < k:
            r = len(self.rows) + 1  # clusters in the new row
            if r == 1:
                row = np.array(
                    [_segment_cost(self.pref, self.pref_sq, 0, i) for i in range(n)]
                )
                split = np.zeros(n, dtype=int)
            else:
                prev = self.rows[-1]
                row = np.full(n, np.inf)
                split = np.zeros(n, dtype=int)
                for i in range(r - 1, n):
                    j = np.arange(r - 1, i + 1)
                    cand = prev[j - 1] + _segment_cost(self.pref, self.pref_sq, j, i)
                    best = int(np.argmin(cand))
                    row[i] = cand[best]
                    split[i] = j[best]
            self.rows.append(row)
            self.splits.append(split)

    def _boundaries(self, k: int) -> list[tuple[int, int]]:
        """Inclusive (first, last) sorted-index ranges of the optimal k clusters."""
        if not 1 <= k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={self.n}")
        self._extend_rows(k)
        boundaries = []
        i = self.n - 1
        for r in range(k, 0, -1):
            j = int(self.splits[r - 1][i])
            boundaries.append((j, i))
            i = j - 1
        boundaries.reverse()
        return boundaries

    def partition(self, k: int) -> tuple[np.ndarray, float]:
        """Optimal assignment (original order) and WCSS for exactly k clusters."""
        sorted_assign = np.empty(self.n, dtype=int)
        for label, (j, i) in enumerate(self._boundaries(k)):
            sorted_assign[j : i + 1] = label
        assignments = np.empty(self.n, dtype=int)
        assignments[self.order] = sorted_assign
        return assignments, float(self.rows[k - 1][self.n - 1])

    def max_cluster_variance(self, k: int) -> float:
        return max(
            _segment_cost(self.pref, self.pref_sq, j, i) / (i - j + 1)
            for j, i in self._boundaries(k)
        )


def optimal_1d_partition(values, k: int) -> tuple[np.ndarray, float]:
    """WCSS-optimal partition of values into exactly k clusters.

    Returns (assignments in input order, optimal WCSS). Exposed separately so
    tests can compare fixed-k optima against exhaustive enumeration.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot cluster an empty value set")
    if not np.all(np.isfinite(arr)):
        raise ValueError("values contain NaN or infinite entries")
    return _Kmeans1D(arr).partition(k)


def cluster_1d(values, tol_s: float, min_k: int, max_k: int) -> tuple[int, np.ndarray, float]:
    """Smallest k in [min_k, max_k] whose WCSS-optimal partition has maximal
    cluster (population) variance <= tol_s**2; falls back to max_k.

    Returns (k, assignments in input order, max cluster variance).
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot cluster an empty value set")
    if not np.all(np.isfinite(arr)):
        raise ValueError("values contain NaN or infinite entries")
    n = arr.size
    k_lo = min(min_k, n)
    k_hi = min(max_k, n)

    dp = _Kmeans1D(arr)
    n_distinct = int(np.unique(dp.sorted_vals).size)
    if tol_s == 0.0 and k_lo <= n_distinct <= k_hi:
        # zero tolerance admits only zero-variance clusters, i.e. one cluster
        # per distinct value; skip the scan below it
        k_lo = max(k_lo, n_distinct)

    threshold = tol_s * tol_s
    for k in range(k_lo, k_hi + 1):
        max_var = dp.max_cluster_variance(k)
        if max_var <= threshold:
            assignments, _ = dp.partition(k)
            return k, assignments, float(max_var)
    assignments, _ = dp.partition(k_hi)
    return k_hi, assignments, float(dp.max_cluster_variance(k_hi))


# ---------------------------------------------------------------------------
# 2-D clustering (Lloyd iteration, deterministic seeded init)


def _farthest_point_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    dist = np.sum((points - points[chosen[0]]) ** 2, axis=1)
    while len(chosen) < k:
        nxt = int(np.argmax(dist))
        chosen.append(nxt)
        dist = np.minimum(dist, np.sum((points - points[nxt]) ** 2, axis=1))
    return points[chosen].copy()


def _lloyd(points: np.ndarray, k: int, rng: np.random.Generator, max_iter: int = 300) -> np.ndarray:
    """Plain k-means on ``points``; returns assignments. Empty clusters are
    repaired by stealing the farthest point from the largest cluster."""
    centers = _farthest_point_init(points, k, rng)
    assignments = np.full(points.shape[0], -1, dtype=int)
    for _ in range(max_iter):
        d2 = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
        new_assign = np.argmin(d2, axis=1)
        for label in range(k):
            if not np.any(new_assign == label):
                sizes = np.bincount(new_assign, minlength=k)
                big = int(np.argmax(sizes))
                members = np.flatnonzero(new_assign == big)
                center_big = points[members].mean(axis=0)
                far = members[int(np.argmax(np.sum((points[members] - center_big) ** 2, axis=1)))]
                new_assign[far] = label
        if np.array_equal(new_assign, assignments):
            break
        assignments = new_assign
        for label in range(k):
            centers[label] = points[assignments == label].mean(axis=0)
    return assignments


def _unscaled_max_variances(lens: np.ndarray, incs: np.ndarray, assignments: np.ndarray, k: int) -> tuple[float, float]:
    var_len = 0.0
    var_inc = 0.0
    for label in range(k):
        mask = assignments == label
        if not np.any(mask):
            continue
        var_len = max(var_len, float(np.var(lens[mask])))
        var_inc = max(var_inc, float(np.var(incs[mask])))
    return var_len, var_inc


def cluster_2d(
    scaled: np.ndarray,
    lens: np.ndarray,
    incs: np.ndarray,
    tol_s: float,
    scl: float,
    min_k: int,
    max_k: int,
    seed: int,
) -> tuple[int, np.ndarray, tuple[float, float]]:
    """Scan k upward, Lloyd-clustering the scaled tuples, until the unscaled
    variance criterion max(scl * Var_len, Var_inc) <= tol_s**2 holds.

    Returns (k, assignments, (max length variance, max increment variance)).
    """
    if scaled.size == 0:
        raise ValueError("cannot cluster an empty tuple set")
    if not (0 < scl < math.inf):
        raise ValueError(f"cluster_2d needs 0 < scl < inf, got {scl}")
    n = scaled.shape[0]
    rng = np.random.default_rng(seed)
    k_lo = min(min_k, n)
    k_hi = min(max_k, n)
    threshold = tol_s * tol_s
    best = None
    for k in range(k_lo, k_hi + 1):
        assignments = _lloyd(scaled, k, rng)
        var_len, var_inc = _unscaled_max_variances(lens, incs, assignments, k)
        best = (k, assignments, (var_len, var_inc))
        if max(scl * var_len, var_inc) <= threshold:
            return best
    return best


# ---------------------------------------------------------------------------
# full digitization


def _frequency_order(assignments: np.ndarray, k: int) -> np.ndarray:
    """Permutation old-label -> rank, most frequent first, ties by first
    occurrence in the piece sequence."""
    counts = np.bincount(assignments, minlength=k)
    first = np.full(k, assignments.size, dtype=int)
    for idx, label in enumerate(assignments):
        if first[label] == assignments.size:
            first[label] = idx
    order = sorted(range(k), key=lambda c: (-counts[c], first[c]))
    rank = np.empty(k, dtype=int)
    for pos, label in enumerate(order):
        rank[label] = pos
    return rank


def digitize(pieces: PieceSequence, config: DigitizationConfig, tol: float) -> SymbolicSeries:
    """Cluster the tuples of ``pieces`` and emit the symbolic string plus the
    model required for reconstruction."""
    n = len(pieces)
    if n == 0:
        raise ValueError("piece sequence is empty")
    N = pieces.original_length
    # n == N means every piece spans one step; the tolerance formula's
    # numerator vanishes, so use its limit directly
    tol_s = 0.0 if n == N else compute_tol_s(tol, N, n, config.s)

    lens = pieces.lengths.astype(float)
    incs = pieces.increments
    if config.scl == 0:
        k, assignments, _ = cluster_1d(incs, tol_s, config.min_k, config.max_k)
        var_len_max, var_inc_max = _unscaled_max_variances(lens, incs, assignments, k)
    elif math.isinf(config.scl):
        k, assignments, _ = cluster_1d(lens, tol_s, config.min_k, config.max_k)
        var_len_max, var_inc_max = _unscaled_max_variances(lens, incs, assignments, k)
    else:
        scaled = scale_tuples(pieces, config.scl)
        k, assignments, (var_len_max, var_inc_max) = cluster_2d(
            scaled, lens, incs, tol_s, config.scl, config.min_k, config.max_k, config.seed
        )

    rank = _frequency_order(assignments, k)
    assignments = rank[assignments]
    centers = np.zeros((k, 2))
    counts = np.zeros(k, dtype=int)
    for label in range(k):
        mask = assignments == label
        counts[label] = int(mask.sum())
        centers[label, 0] = lens[mask].mean()
        centers[label, 1] = incs[mask].mean()

    sigma_len, sigma_inc = tuple_sigmas(pieces)
    model = ClusterModel(
        k=k,
        centers=centers,
        counts=counts,
        assignments=assignments,
        sigma_len=sigma_len,
        sigma_inc=sigma_inc,
        scl=config.scl,
        tol_s=tol_s,
        var_len_max=var_len_max,
        var_inc_max=var_inc_max,
    )
    alphabet = symbol_alphabet(k)
    symbols = "".join(alphabet[i] for i in assignments)
    return SymbolicSeries(symbols, model, pieces.start_value, N)


def digitize_joint(
    pieces_list: list[PieceSequence], config: DigitizationConfig, tol: float
) -> list[SymbolicSeries]:
    """Digitize several piece sequences against one shared cluster model.

    Needed when symbol strings must be comparable across series (anomaly
    scoring): the tuples are pooled, clustered once, and the resulting string
    is split back per input. tol_s uses the pooled totals.
    """
    if not pieces_list:
        raise ValueError("need at least one piece sequence")
    lengths = np.concatenate([p.lengths for p in pieces_list])
    increments = np.concatenate([p.increments for p in pieces_list])
    pooled = PieceSequence(
        start_value=pieces_list[0].start_value,
        lengths=lengths,
        increments=increments,
        original_length=int(lengths.sum()),
    )
    symbolic = digitize(pooled, config, tol)
    out = []
    offset = 0
    for p in pieces_list:
        n_p = len(p)
        sub_model = replace(
            symbolic.model, assignments=symbolic.model.assignments[offset : offset + n_p]
        )
        sub = SymbolicSeries(
            symbols=symbolic.symbols[offset : offset + n_p],
            model=sub_model,
            start_value=p.start_value,
            original_length=p.original_length,
        )
        out.append(sub)
        offset += n_p
    return out


# ---------------------------------------------------------------------------
# JSON sidecar


def to_sidecar(symbolic: SymbolicSeries, norm_mean: float | None = None, norm_std: float | None = None) -> dict:
    """Serializable dict with everything needed for standalone reconstruction."""
    m = symbolic.model
    doc = {
        "k": int(m.k),
        "centers": [[float(a), float(b)] for a, b in m.centers],
        "sigma_len": float(m.sigma_len),
        "sigma_inc": float(m.sigma_inc),
        "scl": "inf" if math.isinf(m.scl) else float(m.scl),
        "tol_s": float(m.tol_s),
        "start_value": float(symbolic.start_value),
        "original_length": int(symbolic.original_length),
        "symbols": symbolic.symbols,
        "counts": [int(c) for c in m.counts],
        "var_len_max": None if math.isnan(m.var_len_max) else float(m.var_len_max),
        "var_inc_max": None if math.isnan(m.var_inc_max) else float(m.var_inc_max),
    }
    if norm_mean is not None:
        doc["norm_mean"] = float(norm_mean)
    if norm_std is not None:
        doc["norm_std"] = float(norm_std)
    return doc


def from_sidecar(doc: dict) -> SymbolicSeries:
    """Rebuild a SymbolicSeries from a sidecar dict (see :func:`to_sidecar`)."""
    k = int(doc["k"])
    symbols = doc["symbols"]
    alphabet = symbol_alphabet(k)
    index = {c: i for i, c in enumerate(alphabet)}
    try:
        assignments = np.array([index[c] for c in symbols], dtype=int)
    except KeyError as exc:
        raise ValueError(f"symbol {exc.args[0]!r} is outside the {k}-letter alphabet") from None
    scl_raw = doc["scl"]
    scl = math.inf if scl_raw == "inf" else float(scl_raw)
    counts = doc.get("counts")
    if counts is None:
        counts = np.bincount(assignments, minlength=k)
    model = ClusterModel(
        k=k,
        centers=np.array(doc["centers"], dtype=float).reshape(k, 2),
        counts=np.asarray(counts, dtype=int),
        assignments=assignments,
        sigma_len=float(doc["sigma_len"]),
        sigma_inc=float(doc["sigma_inc"]),
        scl=scl,
        tol_s=float(doc["tol_s"]),
        var_len_max=float(doc["var_len_max"]) if doc.get("var_len_max") is not None else math.nan,
        var_inc_max=float(doc["var_inc_max"]) if doc.get("var_inc_max") is not None else math.nan,
    )
    return SymbolicSeries(
        symbols=symbols,
        model=model,
        start_value=float(doc["start_value"]),
        original_length=int(doc["original_length"]),
    )


def write_sidecar(symbolic: SymbolicSeries, path, **extras) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_sidecar(symbolic, **extras), fh, indent=2)
        fh.write("\n")


def read_sidecar(path) -> tuple[SymbolicSeries, dict]:
    """Load a sidecar file; returns the series plus the raw dict (for the
    optional normalization fields)."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return from_sidecar(doc), doc
