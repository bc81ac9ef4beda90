"""Matplotlib renderings saved next to reports: Hasse diagrams with cover
witnesses, and per-suite pass/fail summaries for verification runs."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .finspace import FinSpace, iter_bits


def _layout(S: FinSpace):
    """Simple layered layout: height = size of the strict down-set."""
    levels = {}
    for x in range(S.n):
        levels.setdefault(S.down[x].bit_count() - 1, []).append(x)
    pos = {}
    for h, pts in sorted(levels.items()):
        for i, x in enumerate(sorted(pts)):
            pos[x] = (i - (len(pts) - 1) / 2.0, h)
    return pos


def hasse_figure(S: FinSpace, witness=None, title: str = ""):
    """Hasse diagram; optional witness cover drawn as colored point halos."""
    pos = _layout(S)
    fig, ax = plt.subplots(figsize=(4.8, 3.6))
    for x in range(S.n):
        for y in S.covers_above(x):
            ax.plot([pos[x][0], pos[y][0]], [pos[x][1], pos[y][1]],
                    color="0.6", lw=1, zorder=1)
    if witness:
        cmap = plt.get_cmap("tab10")
        for i, part in enumerate(witness):
            xs = [pos[x][0] for x in iter_bits(part)]
            ys = [pos[x][1] for x in iter_bits(part)]
            ax.scatter(xs, ys, s=600 - 120 * i, facecolors="none",
                       edgecolors=cmap(i % 10), lw=2, zorder=2,
                       label=f"cover set {i + 1}")
        ax.legend(loc="upper right", fontsize=7)
    ax.scatter([pos[x][0] for x in range(S.n)],
               [pos[x][1] for x in range(S.n)], s=60, color="k", zorder=3)
    for x in range(S.n):
        ax.annotate(S.labels[x], pos[x], textcoords="offset points",
                    xytext=(6, 6), fontsize=9)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    return fig


def suite_summary_figure(report: dict):
    """Bar chart of checked vs skipped counts per suite, colored by status."""
    suites = report["suites"]
    names = list(suites)
    counts = []
    for name in names:
        c = suites[name].get("checked")
        if isinstance(c, dict):
            c = sum(c.values())
        counts.append(c or 0)
    colors = ["#2a9d8f" if suites[n]["status"] == "pass" else "#e63946"
              for n in names]
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(range(len(names)), counts, color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=40, ha="right", fontsize=8)
    ax.set_ylabel("instances checked")
    ax.set_title(f"verification: {report['status']}")
    fig.tight_layout()
    return fig


def save(fig, path: str):
    fig.savefig(path, dpi=150)
    plt.close(fig)
