"""Figures for the CLI report path, rendered off-screen to PNG files."""

from __future__ import annotations

import math
import os
from collections import Counter
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# fixed metadata keeps the PNG bytes reproducible
_META = {"Software": None}


def _save(fig, plot_dir: str, name: str) -> str:
    os.makedirs(plot_dir, exist_ok=True)
    path = os.path.join(plot_dir, name)
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return path


def plot_h_minus(rows: Sequence[tuple[int, int]], plot_dir: str) -> str:
    """log10 h_p^- against p."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ps = [p for p, _ in rows]
    ax.plot(ps, [math.log10(h) for _, h in rows], "o-", ms=3)
    ax.set_xlabel("p")
    ax.set_ylabel("log10 h_p^-")
    ax.set_title("Relative class numbers")
    ax.grid(alpha=0.3)
    return _save(fig, plot_dir, "h_minus.png")


def plot_valuations(points: Iterable[tuple[int, int, int, int]], plot_dir: str) -> str:
    """Observed v_P(G(omega^a)) against a, one series per (p, f)."""
    series: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for p, f, a, v in points:
        series.setdefault((p, f), []).append((a, v))
    fig, ax = plt.subplots(figsize=(6, 4))
    for (p, f), pts in sorted(series.items()):
        ax.scatter([a for a, _ in pts], [v for _, v in pts], s=8, label=f"q={p}^{f}")
    ax.set_xlabel("a")
    ax.set_ylabel("valuation of G(omega^a)")
    ax.set_title("Gauss sum valuations")
    ax.legend(fontsize=6, ncol=2)
    return _save(fig, plot_dir, "valuations.png")


def plot_verdicts(verdicts: Iterable[str], plot_dir: str) -> str:
    """Bar chart of elimination verdict counts."""
    counts = Counter(verdicts)
    names = sorted(counts)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(names, [counts[n] for n in names])
    ax.set_yscale("log")
    ax.set_ylabel("pairs")
    ax.set_title("Exponent pair verdicts")
    fig.autofmt_xdate()
    return _save(fig, plot_dir, "verdicts.png")
