"""Embedding plots: a deterministic SVG renderer for the register view and
matplotlib report figures (loss curves, before/after panels)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from .graph import Graph
from .layout import Embedding, REGISTER_RADIUS_UM
from .physics import RegisterLimits
from .training import LossBreakdown

_CANVAS = 640.0
_SCALE = 5.6  # px per µm, chosen so the 50 µm disk fits with a margin


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _to_px(x: float, y: float) -> tuple[str, str]:
    return _fmt(_CANVAS / 2 + _SCALE * x), _fmt(_CANVAS / 2 - _SCALE * y)


def plot_svg(e: Embedding, g: Graph, limits: RegisterLimits) -> str:
    """Register view as SVG text: the 50 µm disk, edges, vertices and a
    blockade-radius circle around vertex 1. 3D embeddings are projected
    orthographically onto the xy-plane with depth encoded as marker size;
    markers are emitted back-to-front. Output is byte-stable for fixed input."""
    if e.n != g.n:
        raise ValueError(f"embedding has {e.n} points but graph has {g.n} vertices")
    xy = e.coords[:, :2]
    if e.dims == 3:
        z = e.coords[:, 2]
        span = float(z.max() - z.min()) if e.n else 0.0
        depth = (z - z.min()) / span if span > 0 else np.zeros(e.n)
        radii = 2.0 + 2.5 * depth  # nearer (larger z) drawn bigger
        draw_order = np.argsort(z, kind="stable")
    else:
        radii = np.full(e.n, 2.8)
        draw_order = np.arange(e.n)

    s = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_CANVAS:.0f}" '
        f'height="{_CANVAS:.0f}" viewBox="0 0 {_CANVAS:.0f} {_CANVAS:.0f}">',
        f'<rect width="{_CANVAS:.0f}" height="{_CANVAS:.0f}" fill="white"/>',
    ]
    cx, cy = _to_px(0.0, 0.0)
    s.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(_SCALE * REGISTER_RADIUS_UM)}" '
             'fill="none" stroke="#888888" stroke-width="1.5"/>')
    if e.n:
        bx, by = _to_px(float(xy[0, 0]), float(xy[0, 1]))
        s.append(f'<circle cx="{bx}" cy="{by}" r="{_fmt(_SCALE * limits.r_blockade)}" '
                 'fill="none" stroke="#cc7700" stroke-width="1" stroke-dasharray="5,4"/>')
    for i, j in sorted(g.edges):
        x1, y1 = _to_px(float(xy[i - 1, 0]), float(xy[i - 1, 1]))
        x2, y2 = _to_px(float(xy[j - 1, 0]), float(xy[j - 1, 1]))
        s.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                 'stroke="#3366bb" stroke-width="1"/>')
    for k in draw_order:
        px, py = _to_px(float(xy[k, 0]), float(xy[k, 1]))
        s.append(f'<circle cx="{px}" cy="{py}" r="{_fmt(float(radii[k]))}" '
                 'fill="#222222"/>')
        s.append(f'<text x="{px}" y="{py}" dx="4" dy="-4" font-size="9" '
                 f'fill="#555555">{k + 1}</text>')
    s.append("</svg>")
    return "\n".join(s) + "\n"


def save_loss_figure(trace: Sequence[LossBreakdown], path: str | Path) -> None:
    """Loss terms along the epochs, rendered to an image file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    epochs = np.arange(1, len(trace) + 1)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for label, values in [
        ("loss1 (max dist)", [t.loss1 for t in trace]),
        ("loss2 (min dist)", [t.loss2 for t in trace]),
        ("loss3 (adjacent)", [t.loss3 for t in trace]),
        ("loss4 (non-adjacent)", [t.loss4 for t in trace]),
        ("total", [t.total for t in trace]),
    ]:
        ax.plot(epochs, values, label=label, linewidth=1.2)
    ax.set_xlabel("epoch")
    ax.set_ylabel("loss")
    ax.set_yscale("symlog", linthresh=1e-4)
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def save_register_figure(e: Embedding, g: Graph, limits: RegisterLimits,
                         path: str | Path, title: str = "") -> None:
    """Register scatter with edges and the blockade circle, rendered to file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.4, 5.4))
    disk = plt.Circle((0, 0), REGISTER_RADIUS_UM, fill=False, color="grey", lw=1.2)
    ax.add_patch(disk)
    xy = e.coords[:, :2]
    for i, j in sorted(g.edges):
        ax.plot([xy[i - 1, 0], xy[j - 1, 0]], [xy[i - 1, 1], xy[j - 1, 1]],
                color="#3366bb", lw=0.8, zorder=1)
    if e.dims == 3:
        z = e.coords[:, 2]
        sizes = 16 + 40 * (z - z.min()) / (np.ptp(z) + 1e-9)
    else:
        sizes = np.full(e.n, 24.0)
    ax.scatter(xy[:, 0], xy[:, 1], s=sizes, c="#222222", zorder=2)
    if e.n:
        ring = plt.Circle((xy[0, 0], xy[0, 1]), limits.r_blockade, fill=False,
                          color="#cc7700", ls="--", lw=0.9)
        ax.add_patch(ring)
    ax.set_xlim(-55, 55)
    ax.set_ylim(-55, 55)
    ax.set_aspect("equal")
    ax.set_xlabel("x (µm)")
    ax.set_ylabel("y (µm)")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
