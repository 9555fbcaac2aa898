"""Command-line interface.

Subcommands: symbolize, reconstruct, compare, profile, tarzan. Exit codes:
0 success, 1 usage error, 2 data error. Report-producing subcommands accept
--plot to render a figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .baselines import OneDSaxConfig, SaxConfig, onedsax_symbolize, sax_symbolize
from .compression import CompressionConfig, compress
from .corpus import bundled_corpus_path
from .digitization import (
    DigitizationConfig,
    digitize,
    digitize_joint,
    read_sidecar,
    write_sidecar,
)
from .harness import (
    DISTANCE_KINDS,
    ExperimentConfig,
    IngestError,
    ingest,
    performance_profiles,
    read_error_matrix,
    run_comparison,
    split_symbol_budget,
    write_error_matrix,
    write_profiles,
)
from .preprocessing import denormalize, normalize
from .reconstruction import inverse_digitize, quantize_pieces, reconstruct
from .tarzan import tarzan_scores


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default of 2 is reserved for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _scl_value(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError("scl must be >= 0")
    return value


def _load_single_series(path: str, format: str, row: int | None):
    corpus = ingest(path, format)
    if row is None:
        if len(corpus) > 1:
            raise IngestError(f"{path}: {len(corpus)} series found; pick one with --row")
        return corpus[0]
    if row >= len(corpus):
        raise IngestError(f"{path}: row {row} out of range ({len(corpus)} series)")
    return corpus[row]


def _write_series_csv(values, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in values:
            fh.write(f"{v:.17g}\n")


def _cmd_symbolize(args) -> int:
    entry = _load_single_series(args.input, args.format, args.row)
    norm = normalize(entry.values)
    pieces = compress(norm.values, CompressionConfig(tol=args.tol, max_len=args.max_len))
    config = DigitizationConfig(
        scl=args.scl, s=args.s, min_k=args.min_k, max_k=args.max_k, seed=args.seed
    )
    symbolic = digitize(pieces, config, args.tol)
    out = args.output or f"{args.input}.model.json"
    write_sidecar(symbolic, out, norm_mean=norm.mean, norm_std=norm.std)
    print(symbolic.symbols)
    print(
        f"n={len(symbolic.symbols)} k={symbolic.model.k} tol={args.tol} "
        f"sidecar={out}",
        file=sys.stderr,
    )
    if args.plot:
        from .plotting import save_series_overlay

        save_series_overlay(
            norm.values, reconstruct(symbolic), args.plot, title=entry.series_id
        )
    return 0


def _cmd_reconstruct(args) -> int:
    symbolic, doc = read_sidecar(args.sidecar)
    values = reconstruct(symbolic)
    if not args.keep_normalized and "norm_mean" in doc and "norm_std" in doc:
        values = denormalize(values, doc["norm_mean"], doc["norm_std"])
    out = args.output or f"{args.sidecar}.series.csv"
    _write_series_csv(values, out)
    print(f"wrote {values.size} samples to {out}", file=sys.stderr)
    if args.plot:
        from .plotting import save_series

        save_series(values, args.plot, title="reconstruction")
    return 0


def _cmd_compare(args) -> int:
    path = bundled_corpus_path() if args.corpus == "mini" else args.corpus
    fmt = "ucr" if args.corpus == "mini" else args.format
    corpus = ingest(path, fmt)
    config = ExperimentConfig(
        k=args.k,
        scl=args.scl,
        seed=args.seed,
        distance_kinds=tuple(args.distance) if args.distance else DISTANCE_KINDS,
    )
    matrix = run_comparison(corpus, config)
    write_error_matrix(matrix, args.output)
    print(
        f"included {len(matrix.rows)}, excluded {len(matrix.excluded)} -> {args.output}",
        file=sys.stderr,
    )
    return 0


def _cmd_profile(args) -> int:
    matrix = read_error_matrix(args.matrix)
    curves = performance_profiles(matrix)
    write_profiles(curves, args.output)
    print(f"wrote profile curves to {args.output}", file=sys.stderr)
    if args.plot:
        from .plotting import save_profile_plot

        save_profile_plot(curves, args.plot)
    return 0


def _cmd_tarzan(args) -> int:
    ref_entry = _load_single_series(args.reference, args.format, None)
    test_entry = _load_single_series(args.test, args.format, None)
    ref_values = normalize(ref_entry.values).values
    test_values = normalize(test_entry.values).values

    if args.symbolizer == "abba":
        ref_pieces = compress(ref_values, CompressionConfig(tol=args.tol))
        test_pieces = compress(test_values, CompressionConfig(tol=args.tol))
        config = DigitizationConfig(scl=args.scl, max_k=args.k, seed=args.seed)
        sym_ref, sym_test = digitize_joint([ref_pieces, test_pieces], config, args.tol)
        # center lengths of a jointly fitted model need not sum to an integer;
        # quantize onto the reconstruction's own grid
        tuples = inverse_digitize(sym_test)
        target = max(round(float(tuples[:, 0].sum())), tuples.shape[0])
        seg_lens = quantize_pieces(tuples, sym_test.start_value, target_total=target).lengths
        ref_symbols, test_symbols = sym_ref.symbols, sym_test.symbols
    elif args.symbolizer == "sax":
        cfg = SaxConfig(segment_len=args.w, k=args.k)
        ref_symbols = sax_symbolize(ref_values, cfg)
        test_symbols = sax_symbolize(test_values, cfg)
        seg_lens = np.full(len(test_symbols), args.w)
    else:
        k_mean, k_slope = split_symbol_budget(args.k)
        cfg = OneDSaxConfig(segment_len=args.w, k_mean=k_mean, k_slope=k_slope)
        ref_symbols = onedsax_symbolize(ref_values, cfg)
        test_symbols = onedsax_symbolize(test_values, cfg)
        seg_lens = np.full(len(test_symbols), args.w)

    scores = tarzan_scores(ref_symbols, test_symbols, args.length, seg_lens)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write("index,score\n")
        for i, s in enumerate(scores.scores):
            fh.write(f"{i},{s:.17g}\n")
    intervals = scores.exceedances(args.threshold)
    intervals_path = args.intervals or f"{args.output}.intervals.csv"
    with open(intervals_path, "w", encoding="utf-8") as fh:
        fh.write("start,end\n")
        for start, end in intervals:
            fh.write(f"{start},{end}\n")
    print(
        f"{len(intervals)} exceedance interval(s) above |score| > {args.threshold} "
        f"-> {args.output}, {intervals_path}",
        file=sys.stderr,
    )
    if args.plot:
        from .plotting import save_tarzan_plot

        save_tarzan_plot(scores, args.threshold, args.plot, test_values=test_values)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abba", description=__doc__)
    parser.add_argument("--version", action="version", version=f"abba {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("symbolize", help="series file -> symbol string + model sidecar")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="sidecar JSON path (default: INPUT.model.json)")
    p.add_argument("--tol", type=float, default=0.1)
    p.add_argument("--scl", type=_scl_value, default=0.0, help="0, positive real, or 'inf'")
    p.add_argument("--s", type=float, default=0.2)
    p.add_argument("--min-k", type=int, default=1)
    p.add_argument("--max-k", type=int, default=100)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "ucr"), default="csv")
    p.add_argument("--row", type=int, default=None, help="series row for multi-series inputs")
    p.add_argument("--plot", help="render original vs reconstruction to this file")
    p.set_defaults(func=_cmd_symbolize)

    p = sub.add_parser("reconstruct", help="model sidecar -> series CSV")
    p.add_argument("sidecar")
    p.add_argument("-o", "--output", help="series CSV path (default: SIDECAR.series.csv)")
    p.add_argument(
        "--keep-normalized",
        action="store_true",
        help="skip de-normalization even when the sidecar stores mean/std",
    )
    p.add_argument("--plot", help="render the reconstruction to this file")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("compare", help="corpus -> reconstruction error matrix CSV")
    p.add_argument("corpus", help="corpus path, or 'mini' for the bundled corpus")
    p.add_argument("-o", "--output", default="error_matrix.csv")
    p.add_argument("--format", choices=("csv", "ucr"), default="ucr")
    p.add_argument("--k", type=int, default=9)
    p.add_argument("--scl", type=_scl_value, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--distance",
        action="append",
        choices=DISTANCE_KINDS,
        help="restrict to specific distance kinds (repeatable)",
    )
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("profile", help="error matrix CSV -> theta-p curve CSV")
    p.add_argument("matrix")
    p.add_argument("-o", "--output", default="profiles.csv")
    p.add_argument("--plot", help="render the profile curves to this file")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("tarzan", help="reference + test series -> anomaly score CSV")
    p.add_argument("reference")
    p.add_argument("test")
    p.add_argument("-o", "--output", default="tarzan_scores.csv")
    p.add_argument("--symbolizer", choices=("abba", "sax", "1dsax"), default="abba")
    p.add_argument("-l", "--length", type=int, default=5, help="substring window length")
    p.add_argument("--tol", type=float, default=0.1, help="compression tolerance (abba)")
    p.add_argument("--scl", type=_scl_value, default=0.0)
    p.add_argument("--w", type=int, default=5, help="segment width (sax/1dsax)")
    p.add_argument("--k", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.2)
    p.add_argument("--format", choices=("csv", "ucr"), default="csv")
    p.add_argument("--intervals", help="exceedance intervals CSV (default: OUTPUT.intervals.csv)")
    p.add_argument("--plot", help="render scores and thresholds to this file")
    p.set_defaults(func=_cmd_tarzan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IngestError as exc:
        print(f"abba: data error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"abba: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
