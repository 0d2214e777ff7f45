"""Figures written next to CLI outputs. Uses the non-interactive Agg backend."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sparse import MonteCarloStats  # noqa: E402


def plot_batch(rows: Sequence[dict], path: str | Path) -> Path:
    """Colors used against ``delta + 1`` and the target bound, one point per graph,
    plus the distribution of branches taken."""
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    x = [r["delta"] + 1 for r in rows]
    ax1.scatter(x, [r["colors_used"] for r in rows], s=14, label="colors used", zorder=3)
    ax1.scatter(x, [r["bound"] for r in rows], s=30, marker="_", label="target bound", zorder=2)
    chis = [(r["delta"] + 1, r["chi"]) for r in rows if r.get("chi") not in (None, "")]
    if chis:
        ax1.scatter(*zip(*chis), s=14, marker="x", label="exact chi", zorder=4)
    hi = max(x, default=1)
    ax1.plot([0, hi], [0, hi], lw=0.8, color="grey", label="delta + 1")
    ax1.set_xlabel("delta + 1")
    ax1.set_ylabel("colors")
    ax1.legend(fontsize=8)

    counts: Counter[str] = Counter()
    for r in rows:
        for b in str(r.get("branches", "")).split("|"):
            if b:
                counts[b] += 1
    names = sorted(counts)
    ax2.bar(names, [counts[n] for n in names])
    ax2.set_ylabel("times taken")
    ax2.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_sparse(stats: MonteCarloStats, path: str | Path) -> Path:
    """Per-vertex means of AT, Del, X and X' with ``z``-standard-error bars,
    against the finite upper bound on AT and lower bound on X'."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(8, 4))
    vs = list(range(1, stats.n + 1))
    for key, label in (("AT", "AT"), ("Del", "Del"), ("X", "X"), ("Xp", "X'")):
        ax.errorbar(vs, stats.mean[key], yerr=stats.z * stats.stderr[key], fmt="o", ms=3, capsize=2, label=label)
    ax.step(vs, stats.at_upper, where="mid", ls="--", lw=1, label="AT upper bound")
    ax.step(vs, stats.xp_lower, where="mid", ls=":", lw=1, label="X' lower bound")
    ax.set_xlabel("vertex")
    ax.set_ylabel("mean count per trial")
    ax.set_title(f"n={stats.n}, delta={stats.delta}, C={stats.C}, trials={stats.trials}, seed={stats.seed}")
    ax.legend(fontsize=8, ncol=3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
