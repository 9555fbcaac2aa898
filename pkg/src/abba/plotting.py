"""Figure rendering for the report paths of the CLI.

Every function writes a file and returns its path; nothing is shown
interactively (Agg backend), so the CLI can run headless next to its
delimited outputs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import ProfileCurve
from .tarzan import AnomalyScoreSeries


def save_series_overlay(original, reconstruction, path, title: str = "") -> str:
    """Original series with its reconstruction overlaid."""
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(np.asarray(original, dtype=float), color="0.2", lw=1.0, label="original")
    ax.plot(
        np.asarray(reconstruction, dtype=float),
        color="tab:red",
        lw=1.2,
        ls="--",
        label="reconstruction",
    )
    ax.set_xlabel("time index")
    ax.set_ylabel("value")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_series(values, path, title: str = "") -> str:
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(np.asarray(values, dtype=float), color="tab:blue", lw=1.0)
    ax.set_xlabel("time index")
    ax.set_ylabel("value")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_profile_plot(curves: dict[str, dict[str, ProfileCurve]], path) -> str:
    """One subplot per distance kind; step curves per algorithm."""
    kinds = list(curves)
    n = len(kinds)
    ncols = 2 if n > 1 else 1
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(5 * ncols, 3.2 * nrows), squeeze=False)
    for idx, kind in enumerate(kinds):
        ax = axes[idx // ncols][idx % ncols]
        per_alg = curves[kind]
        finite = np.concatenate([c.ratios[np.isfinite(c.ratios)] for c in per_alg.values()])
        theta_max = max(1.0, float(finite.max())) if finite.size else 1.0
        thetas = np.unique(np.concatenate([[1.0], finite, [theta_max]]))
        for alg, curve in per_alg.items():
            ps = [curve.value(t) for t in thetas]
            ax.step(thetas, ps, where="post", label=alg)
        ax.set_xlim(1.0, theta_max * 1.02)
        ax.set_ylim(0.0, 1.05)
        ax.set_xlabel(r"$\theta$")
        ax.set_ylabel("p")
        ax.set_title(kind)
        ax.legend(loc="lower right", fontsize=8)
    for idx in range(n, nrows * ncols):
        axes[idx // ncols][idx % ncols].axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def save_tarzan_plot(scores: AnomalyScoreSeries, threshold: float, path, test_values=None) -> str:
    """Score series with the threshold band; the test series above when given."""
    if test_values is not None:
        fig, (ax_ts, ax) = plt.subplots(2, 1, figsize=(8, 5), sharex=True)
        ax_ts.plot(np.asarray(test_values, dtype=float), color="0.2", lw=1.0)
        ax_ts.set_ylabel("test series")
    else:
        fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(scores.scores, color="tab:blue", lw=1.0)
    ax.axhline(threshold, color="k", ls="--", lw=0.8)
    ax.axhline(-threshold, color="k", ls="--", lw=0.8)
    for start, end in scores.exceedances(threshold):
        ax.axvspan(start, end, color="tab:red", alpha=0.2)
    ax.set_xlabel("time index")
    ax.set_ylabel("anomaly score")
    ax.set_ylim(-1.1, 1.1)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)
