"""Optional matplotlib figures for report commands.

Rendering is file-only (Agg backend); the delimited report output is never
replaced, the figure lands alongside it at the requested path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_generator_figure(generators, path: str, title: str = "generators"):
    """Scatter the first two coordinates of each generator."""
    fig, ax = plt.subplots(figsize=(4, 4))
    xs = [g[0] for g in generators]
    ys = [g[1] if len(g) > 1 else 0 for g in generators]
    ax.scatter(xs, ys, zorder=3)
    for g, x, y in zip(generators, xs, ys):
        ax.annotate(str(g), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.axhline(0, color="gray", linewidth=0.5)
    ax.axvline(0, color="gray", linewidth=0.5)
    ax.set_title(title)
    fig.savefig(path, dpi=100)
    plt.close(fig)


def save_rank_figure(ranks, path: str, title: str = "embedding ranks"):
    """Plot the canonical-embedding rank per level."""
    fig, ax = plt.subplots(figsize=(4, 3))
    levels = list(range(1, len(ranks) + 1))
    ax.plot(levels, list(ranks), marker="o")
    ax.set_xlabel("level")
    ax.set_ylabel("rank")
    ax.set_xticks(levels)
    ax.set_title(title)
    fig.savefig(path, dpi=100)
    plt.close(fig)
