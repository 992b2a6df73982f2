"""Figures for the report path: product tables and law summaries."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STATUS_COLORS = {"pass": "#4c9a5f", "fail": "#c44e52", "skipped": "#a0a0a0"}


def _style(ax, title, k, m):
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("right factor <t, h>")
    ax.set_ylabel("left factor <t, h>")
    # block boundaries between consecutive representatives
    for b in range(m, k * m, m):
        ax.axhline(b - 0.5, color="w", lw=0.6)
        ax.axvline(b - 0.5, color="w", lw=0.6)


def plot_diffracted_tables(D, path) -> Path:
    """Two panels: T-coordinate and H-coordinate of every bequeath product."""
    F = D.fibration
    k, m = F.t_size, F.h_size
    table = np.asarray(D.table)
    fig, axes = plt.subplots(1, 2, figsize=(9, 4.2), constrained_layout=True)
    for ax, data, title, cmap in (
        (axes[0], table // m, "T-coordinate of product", "viridis"),
        (axes[1], table % m, "H-coordinate of product", "magma"),
    ):
        im = ax.imshow(data, cmap=cmap, interpolation="nearest")
        _style(ax, title, k, m)
        fig.colorbar(im, ax=ax, shrink=0.8)
    G = F.group
    fig.suptitle(f"{G.name or 'G'}: |T| = {k}, |H| = {m}", fontsize=11)
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_law_report(report, path) -> Path:
    results = report.results
    names = [r.law_id for r in results]
    counts = [max(r.checks_run, 1) for r in results]
    colors = [STATUS_COLORS[r.status] for r in results]
    fig, ax = plt.subplots(figsize=(7, 0.35 * len(results) + 1.2), constrained_layout=True)
    ax.barh(names, counts, color=colors)
    ax.set_xscale("log")
    ax.invert_yaxis()
    ax.set_xlabel("checks run")
    for y, r in enumerate(results):
        ax.text(counts[y], y, f" {r.status}", va="center", fontsize=8)
    inst = report.instance
    ax.set_title(f"{inst.get('group') or 'G'} (order {inst.get('order')}), "
                 f"|H| = {len(inst.get('subgroup', []))}", fontsize=10)
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
