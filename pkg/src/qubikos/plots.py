"""Figures for the gap report: one grouped-bar chart per architecture."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evalharness import GapRow


def render_gap_figures(rows: Sequence[GapRow], directory: str | Path) -> list[Path]:
    """Draw one bar chart per architecture: mean swap ratio by designed count and tool.

    A dashed line marks ratio 1.0, where a tool matches the designed
    minimum. Rows without a ratio (no valid results, or a designed count
    of zero) are skipped. Returns the written paths in name order.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    by_arch: dict[str, list[GapRow]] = {}
    for row in rows:
        if row.ratio is not None:
            by_arch.setdefault(row.arch, []).append(row)
    written: list[Path] = []
    for arch in sorted(by_arch):
        arch_rows = by_arch[arch]
        ns = sorted({r.designed_n for r in arch_rows})
        tools = sorted({r.tool for r in arch_rows})
        lookup = {(r.designed_n, r.tool): r.ratio for r in arch_rows}
        width = 0.8 / len(tools)
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for t_idx, tool in enumerate(tools):
            xs = [i + (t_idx - (len(tools) - 1) / 2) * width for i in range(len(ns))]
            ys = [lookup.get((n, tool), 0.0) for n in ns]
            ax.bar(xs, ys, width=width, label=tool)
        ax.axhline(1.0, color="black", linewidth=0.8, linestyle="--")
        ax.set_xticks(range(len(ns)))
        ax.set_xticklabels([str(n) for n in ns])
        ax.set_xlabel("designed minimum swap count")
        ax.set_ylabel("mean swap ratio")
        ax.set_title(arch)
        ax.legend()
        fig.tight_layout()
        path = directory / f"gaps-{arch}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
