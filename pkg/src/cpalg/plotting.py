"""Matplotlib figures for the verify-suite report. Headless (Agg backend)."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fryingpan import FryingPan  # noqa: E402

__all__ = ["plot_fryingpan", "plot_increments", "plot_hasse"]


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_fryingpan(fp: FryingPan, path) -> Path:
    """Handle 0..a-1 on a line, cycle a..a+k-1 on a circle, successor arrows."""
    pos = {}
    r = max(0.8, fp.k / (2 * math.pi) * 0.9)
    cx = fp.a + r
    for x in range(fp.a):
        pos[x] = (float(x), 0.0)
    for i in range(fp.k):
        t = math.pi - 2 * math.pi * i / fp.k
        pos[fp.a + i] = (cx + r * math.cos(t), r * math.sin(t))
    fig, ax = plt.subplots(figsize=(1.2 + 0.6 * (fp.a + 2 * r), 1.5 + 1.2 * r))
    for x in range(fp.size):
        (x0, y0), (x1, y1) = pos[x], pos[fp.suc(x)]
        if x == fp.suc(x):
            ax.add_patch(plt.Circle((x0, y0 + 0.25), 0.2, fill=False, lw=0.8))
            continue
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="->", shrinkA=9, shrinkB=9, lw=0.9))
    for x, (px, py) in pos.items():
        ax.scatter([px], [py], s=320, c="lightgrey" if x >= fp.a else "white",
                   edgecolors="black", zorder=3)
        ax.text(px, py, str(x), ha="center", va="center", fontsize=8, zorder=4)
    ax.set_title(f"M({fp.a},{fp.k}) successor graph")
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)


def plot_increments(values, path, lo: int = 0, title: str = "increments") -> Path:
    """Bar chart of sign(d) * log10(|d| + 1) for d = f(x) - f(x-1)."""
    xs, ys, colors = [], [], []
    for i in range(len(values) - 1):
        d = values[i + 1] - values[i]
        xs.append(lo + i + 1)
        ys.append(math.copysign(math.log10(abs(d) + 1), d) if d else 0.0)
        colors.append("tab:blue" if d >= 0 else "tab:red")
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.bar(xs, ys, color=colors)
    ax.axhline(0, color="black", lw=0.6)
    ax.set_xlabel("x")
    ax.set_ylabel("±log10(|Δ|+1)")
    ax.set_title(title)
    return _save(fig, path)


def plot_hasse(members, edges, labels, path, title: str = "lattice") -> Path:
    """Hasse diagram; members are bitmasks, edges (lower, upper) index pairs."""
    rank = [bin(m).count("1") for m in members]
    levels: dict[int, list[int]] = {}
    for i, r in enumerate(rank):
        levels.setdefault(r, []).append(i)
    pos = {}
    for r, idx in levels.items():
        for j, i in enumerate(sorted(idx, key=lambda i: members[i])):
            pos[i] = (j - (len(idx) - 1) / 2, r)
    width = max(len(v) for v in levels.values())
    fig, ax = plt.subplots(figsize=(max(4, 1.6 * width), 1 + 1.1 * len(levels)))
    for lo_i, hi_i in edges:
        (x0, y0), (x1, y1) = pos[lo_i], pos[hi_i]
        ax.plot([x0, x1], [y0, y1], color="grey", lw=0.8, zorder=1)
    for i, (px, py) in pos.items():
        ax.text(px, py, labels[i], ha="center", va="center", fontsize=7, zorder=2,
                bbox=dict(boxstyle="round", fc="white", ec="black", lw=0.6))
    ax.set_title(title)
    ax.axis("off")
    ax.margins(0.15)
    return _save(fig, path)
