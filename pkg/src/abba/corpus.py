"""Seeded synthetic corpus bundled for the comparison harness.

Twenty series mixing sines, trends, steps, and noise at varying lengths,
generated deterministically so the bundled TSV can be regenerated and
verified. The full UCR-style archive format is supported through
:func:`abba.harness.ingest`; nothing external is downloaded.
"""

from __future__ import annotations

from importlib import resources
from typing import NamedTuple

import numpy as np


class LabeledSeries(NamedTuple):
    series_id: str
    values: np.ndarray
    label: str = ""


DEFAULT_CORPUS_SEED = 20


def _sine(rng, n):
    period = rng.uniform(20, 60)
    phase = rng.uniform(0, 2 * np.pi)
    amp = rng.uniform(0.8, 2.0)
    return amp * np.sin(2 * np.pi * np.arange(n) / period + phase)


def _trend_sine(rng, n):
    slope = rng.uniform(-2.0, 2.0) / n
    return _sine(rng, n) + slope * np.arange(n) * rng.uniform(5, 15)


def _steps(rng, n):
    n_steps = int(rng.integers(6, 14))
    edges = np.sort(rng.choice(np.arange(10, n - 10), size=n_steps - 1, replace=False))
    levels = rng.normal(0, 1, size=n_steps)
    out = np.empty(n)
    prev = 0
    for i, e in enumerate(np.append(edges, n)):
        out[prev:e] = levels[i]
        prev = e
    return out


def _smooth_walk(rng, n):
    walk = np.cumsum(rng.normal(0, 1, size=n))
    kernel = np.ones(9) / 9.0
    return np.convolve(walk, kernel, mode="same")


def _noisy_sine(rng, n):
    return _sine(rng, n) + rng.normal(0, 0.08, size=n)


def _am_sine(rng, n):
    carrier = _sine(rng, n)
    envelope = 0.5 + 0.5 * np.abs(np.sin(2 * np.pi * np.arange(n) / rng.uniform(120, 240)))
    return carrier * envelope


def _triangle(rng, n):
    period = rng.uniform(30, 70)
    t = np.arange(n) / period
    return 2.0 * np.abs(2.0 * (t - np.floor(t + 0.5))) - 1.0


_GENERATORS = (
    ("sine", _sine),
    ("noisy_sine", _noisy_sine),
    ("trend_sine", _trend_sine),
    ("steps", _steps),
    ("walk", _smooth_walk),
    ("am_sine", _am_sine),
    ("triangle", _triangle),
)


def synthetic_mini_corpus(n_series: int = 20, seed: int = DEFAULT_CORPUS_SEED) -> list[LabeledSeries]:
    """Deterministic desk-scale corpus cycling through the generator kinds."""
    corpus = []
    for i in range(n_series):
        kind, gen = _GENERATORS[i % len(_GENERATORS)]
        rng = np.random.default_rng(seed + 1000 * i)
        n = int(rng.integers(300, 601))
        values = gen(rng, n)
        corpus.append(LabeledSeries(f"{kind}_{i:03d}", np.asarray(values, dtype=float), kind))
    return corpus


def write_corpus_tsv(corpus: list[LabeledSeries], path) -> None:
    """UCR-style TSV: first field the label/id, remaining fields the samples."""
    with open(path, "w", encoding="utf-8") as fh:
        for entry in corpus:
            row = "\t".join([entry.series_id] + [f"{v:.17g}" for v in entry.values])
            fh.write(row + "\n")


def bundled_corpus_path() -> str:
    """Filesystem path of the TSV shipped inside the package."""
    return str(resources.files("abba").joinpath("data/mini_corpus.tsv"))
