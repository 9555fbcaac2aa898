"""Comparison protocol: tolerance escalation, exclusion rules, fair baseline
parameterization, error matrices, and performance profiles.

Per series: find the first tolerance on the schedule that compresses to at
most ``compression_target * N`` pieces, give SAX and 1d-SAX the same string
length by fixing their segment width to floor((N+1)/n) on the first n*w
samples, and record reconstruction errors under every distance kind.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .baselines import (
    OneDSaxConfig,
    SaxConfig,
    onedsax_reconstruct,
    onedsax_symbolize,
    sax_reconstruct,
    sax_symbolize,
)
from .compression import CompressionConfig, PieceSequence, compress
from .corpus import LabeledSeries
from .digitization import DigitizationConfig, digitize
from .distances import DISTANCE_KINDS, distance
from .preprocessing import normalize
from .reconstruction import reconstruct

ALGORITHMS = ("ABBA", "SAX", "1dSAX")

DEFAULT_TOL_SCHEDULE = tuple(round(0.05 * i, 2) for i in range(1, 11))


class IngestError(Exception):
    """Raised when a corpus file cannot be read or parsed; message names the row."""


@dataclass(frozen=True)
class ExperimentConfig:
    tol_schedule: tuple[float, ...] = DEFAULT_TOL_SCHEDULE
    compression_target: float = 0.20
    min_series_len: int = 100
    min_pieces: int = 9
    k: int = 9
    scl: float = 0.0
    distance_kinds: tuple[str, ...] = DISTANCE_KINDS
    seed: int = 0

    def __post_init__(self):
        if list(self.tol_schedule) != sorted(self.tol_schedule):
            raise ValueError("tol_schedule must be ascending")
        for kind in self.distance_kinds:
            if kind not in DISTANCE_KINDS:
                raise ValueError(f"unknown distance kind {kind!r}")


@dataclass(frozen=True)
class Excluded:
    reason: str  # too_short | too_noisy | too_few_pieces | error:<detail>


@dataclass(frozen=True)
class SeriesResult:
    series_id: str
    tol: float
    n_pieces: int
    n_steps: int  # N, one less than the sample count
    errors: dict[str, dict[str, float]]  # kind -> algorithm -> value


@dataclass(frozen=True)
class ErrorMatrix:
    rows: list[SeriesResult]
    excluded: list[tuple[str, str]]  # (series_id, reason)
    algorithms: tuple[str, ...] = ALGORITHMS
    kinds: tuple[str, ...] = DISTANCE_KINDS

    def entries(self, kind: str) -> np.ndarray:
        """(n_rows, n_algorithms) error matrix for one distance kind."""
        return np.array([[row.errors[kind][alg] for alg in self.algorithms] for row in self.rows])


def select_tolerance(series, config: ExperimentConfig = ExperimentConfig()):
    """Escalate along the tolerance schedule until the compression target is
    met; returns (tol, pieces) or an Excluded value (never raises for
    ordinary data).

    Exclusion reasons: series shorter than the minimum, no schedule entry
    reaching the target (too noisy), or too few pieces for the shared symbol
    budget at the accepted tolerance.
    """
    values = np.asarray(series, dtype=float)
    if values.size < config.min_series_len:
        return Excluded("too_short")
    N = values.size - 1
    for tol in config.tol_schedule:
        pieces = compress(values, CompressionConfig(tol=tol))
        if len(pieces) <= config.compression_target * N:
            if len(pieces) < config.min_pieces:
                return Excluded("too_few_pieces")
            return tol, pieces
    return Excluded("too_noisy")


def split_symbol_budget(k: int) -> tuple[int, int]:
    """Factor k into the most balanced (k_mean, k_slope) pair, both >= 2."""
    best = None
    for a in range(2, int(math.isqrt(k)) + 1):
        if k % a == 0 and k // a >= 2:
            best = (a, k // a)
    if best is None:
        raise ValueError(f"k={k} cannot be split into two factors >= 2 for 1d-SAX")
    return best


def evaluate_series(entry: LabeledSeries, config: ExperimentConfig):
    """Run all three algorithms on one series; returns SeriesResult or Excluded."""
    norm = normalize(entry.values)
    selection = select_tolerance(norm.values, config)
    if isinstance(selection, Excluded):
        return selection
    tol, pieces = selection
    N = len(norm.values) - 1
    n = len(pieces)

    dig_config = DigitizationConfig(scl=config.scl, max_k=config.k, seed=config.seed)
    symbolic = digitize(pieces, dig_config, tol)
    recon_abba = reconstruct(symbolic)

    w = (N + 1) // n
    truncated = norm.values[: n * w]
    sax_cfg = SaxConfig(segment_len=w, k=config.k)
    recon_sax = sax_reconstruct(sax_symbolize(truncated, sax_cfg), sax_cfg, truncated.size)
    k_mean, k_slope = split_symbol_budget(config.k)
    oned_cfg = OneDSaxConfig(segment_len=w, k_mean=k_mean, k_slope=k_slope)
    recon_oned = onedsax_reconstruct(
        onedsax_symbolize(truncated, oned_cfg), oned_cfg, truncated.size
    )

    errors: dict[str, dict[str, float]] = {}
    for kind in config.distance_kinds:
        errors[kind] = {
            "ABBA": distance(kind, norm.values, recon_abba),
            "SAX": distance(kind, truncated, recon_sax),
            "1dSAX": distance(kind, truncated, recon_oned),
        }
    return SeriesResult(entry.series_id, tol, n, N, errors)


def run_comparison(corpus: list[LabeledSeries], config: ExperimentConfig = ExperimentConfig()) -> ErrorMatrix:
    """Evaluate every series; per-series failures become exclusions, never
    abort the run. Row order follows input order."""
    if not corpus:
        raise ValueError("corpus is empty")
    rows: list[SeriesResult] = []
    excluded: list[tuple[str, str]] = []
    for entry in corpus:
        try:
            result = evaluate_series(entry, config)
        except Exception as exc:  # noqa: BLE001 - recorded, not fatal
            excluded.append((entry.series_id, f"error:{exc}"))
            continue
        if isinstance(result, Excluded):
            excluded.append((entry.series_id, result.reason))
        else:
            rows.append(result)
    return ErrorMatrix(rows=rows, excluded=excluded, kinds=tuple(config.distance_kinds))


# ---------------------------------------------------------------------------
# performance profiles


@dataclass(frozen=True)
class ProfileCurve:
    """Nondecreasing step curve: fraction of problems solved within a factor
    theta of the best observed performance."""

    algorithm: str
    ratios: np.ndarray  # sorted ascending; inf where the best was exactly 0

    def value(self, theta: float) -> float:
        return float(np.searchsorted(self.ratios, theta, side="right")) / self.ratios.size


def profile_from_entries(entries: np.ndarray, algorithms: tuple[str, ...]) -> dict[str, ProfileCurve]:
    """Performance-profile curves from an (n_rows, n_algorithms) error matrix.

    Per row, each entry is divided by the row minimum; ties at the minimum
    count for all tied algorithms. A row whose minimum is 0 gives ratio 1 to
    exactly-zero entries and infinity to the rest.
    """
    entries = np.asarray(entries, dtype=float)
    if entries.ndim != 2 or entries.size == 0:
        raise ValueError("error matrix must be a nonempty 2-D array")
    if entries.shape[1] != len(algorithms):
        raise ValueError("algorithm names do not match matrix columns")
    if np.any(entries < 0):
        raise ValueError("error entries must be nonnegative")
    best = entries.min(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(
            best > 0, entries / best, np.where(entries == 0, 1.0, np.inf)
        )
    return {
        alg: ProfileCurve(alg, np.sort(ratios[:, i]))
        for i, alg in enumerate(algorithms)
    }


def performance_profiles(matrix: ErrorMatrix) -> dict[str, dict[str, ProfileCurve]]:
    """Curves per distance kind per algorithm."""
    if not matrix.rows:
        raise ValueError("error matrix has no included series")
    return {
        kind: profile_from_entries(matrix.entries(kind), matrix.algorithms)
        for kind in matrix.kinds
    }


# ---------------------------------------------------------------------------
# ingestion and delimited output


def _parse_float(token: str, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise IngestError(f"{where}: non-numeric token {token!r}") from None
    if not math.isfinite(value):
        raise IngestError(f"{where}: non-finite value {token!r}")
    return value


def _ingest_csv_file(path: str) -> LabeledSeries:
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            token = line.strip()
            if not token or token.startswith("#"):
                continue
            values.append(_parse_float(token, f"{path}:{lineno}"))
    if len(values) < 2:
        raise IngestError(f"{path}: fewer than 2 samples")
    stem = os.path.splitext(os.path.basename(path))[0]
    return LabeledSeries(stem, np.array(values), "")


def _ingest_tsv_file(path: str) -> list[LabeledSeries]:
    raw: list[tuple[str, np.ndarray]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                raise IngestError(f"{path}:{lineno}: need a label plus at least 2 values")
            label = fields[0]
            values = np.array(
                [_parse_float(tok, f"{path}:{lineno}") for tok in fields[1:]]
            )
            raw.append((label, values))
    if not raw:
        raise IngestError(f"{path}: no series rows")
    labels = [label for label, _ in raw]
    unique = len(set(labels)) == len(labels)
    out = []
    for i, (label, values) in enumerate(raw):
        series_id = label if unique else f"{i:03d}_{label}"
        out.append(LabeledSeries(series_id, values, label))
    return out


def ingest(path: str, format: str) -> list[LabeledSeries]:
    """Load a corpus: ``csv`` = one single-column series per file (a directory
    loads every .csv inside), ``ucr`` = one tab-separated series per row with
    a leading label field."""
    if format not in ("csv", "ucr"):
        raise IngestError(f"unknown corpus format {format!r}; expected 'csv' or 'ucr'")
    if not os.path.exists(path):
        raise IngestError(f"{path}: no such file or directory")
    if format == "csv":
        if os.path.isdir(path):
            files = sorted(
                os.path.join(path, f) for f in os.listdir(path) if f.endswith(".csv")
            )
            if not files:
                raise IngestError(f"{path}: no .csv files found")
            return [_ingest_csv_file(f) for f in files]
        return [_ingest_csv_file(path)]
    if os.path.isdir(path):
        raise IngestError(f"{path}: 'ucr' format expects a single file")
    return _ingest_tsv_file(path)


def write_error_matrix(matrix: ErrorMatrix, path: str) -> None:
    """Delimited output: exclusions as leading comment lines, then one row per
    included series with per-(kind, algorithm) error columns."""
    with open(path, "w", encoding="utf-8") as fh:
        for series_id, reason in matrix.excluded:
            fh.write(f"# excluded,{series_id},{reason}\n")
        cols = ["series_id", "tol", "n", "N"] + [
            f"{kind}_{alg}" for kind in matrix.kinds for alg in matrix.algorithms
        ]
        fh.write(",".join(cols) + "\n")
        for row in matrix.rows:
            cells = [row.series_id, f"{row.tol:.2f}", str(row.n_pieces), str(row.n_steps)]
            for kind in matrix.kinds:
                for alg in matrix.algorithms:
                    cells.append(f"{row.errors[kind][alg]:.17g}")
            fh.write(",".join(cells) + "\n")


def read_error_matrix(path: str) -> ErrorMatrix:
    excluded: list[tuple[str, str]] = []
    rows: list[SeriesResult] = []
    with open(path, "r", encoding="utf-8") as fh:
        header: list[str] | None = None
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("# excluded,"):
                _, series_id, reason = line[2:].split(",", 2)
                excluded.append((series_id, reason))
                continue
            if header is None:
                header = line.split(",")
                continue
            cells = line.split(",")
            if len(cells) != len(header):
                raise IngestError(f"{path}:{lineno}: expected {len(header)} fields")
            errors: dict[str, dict[str, float]] = {}
            for name, cell in zip(header[4:], cells[4:]):
                kind, alg = name.rsplit("_", 1)
                errors.setdefault(kind, {})[alg] = _parse_float(cell, f"{path}:{lineno}")
            rows.append(
                SeriesResult(
                    series_id=cells[0],
                    tol=_parse_float(cells[1], f"{path}:{lineno}"),
                    n_pieces=int(cells[2]),
                    n_steps=int(cells[3]),
                    errors=errors,
                )
            )
    if header is None:
        raise IngestError(f"{path}: missing header row")
    kinds = tuple(dict.fromkeys(name.rsplit("_", 1)[0] for name in header[4:]))
    algorithms = tuple(dict.fromkeys(name.rsplit("_", 1)[1] for name in header[4:]))
    return ErrorMatrix(rows=rows, excluded=excluded, algorithms=algorithms, kinds=kinds)


def write_profiles(curves: dict[str, dict[str, ProfileCurve]], path: str) -> None:
    """Tidy delimited curves (kind, algorithm, theta, p), one step per row."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("kind,algorithm,theta,p\n")
        for kind, per_alg in curves.items():
            finite = np.concatenate(
                [c.ratios[np.isfinite(c.ratios)] for c in per_alg.values()]
            )
            thetas = np.unique(np.concatenate([[1.0], finite]))
            for alg, curve in per_alg.items():
                for theta in thetas:
                    fh.write(f"{kind},{alg},{theta:.17g},{curve.value(theta):.17g}\n")
