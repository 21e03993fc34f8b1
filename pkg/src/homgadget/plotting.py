"""Figures for the cost report.

Only the ``report`` verb needs these; matplotlib is imported on first use and
forced onto the non-interactive Agg backend.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0

STYLE = {
    "font.family": "serif",
    "axes.labelsize": 10,
    "font.size": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def size(scale: float = 1.0, width_in: float = 5.7, ratio: float = GOLDEN) -> tuple[float, float]:
    """(width, height) in inches at ``scale`` times the text width."""
    w = width_in * scale
    return w, w * ratio


def new(scale: float = 1.0, nrows: int = 1, ncols: int = 1):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams.update(STYLE)
    w, h = size(scale)
    return plt.subplots(nrows=nrows, ncols=ncols, figsize=(w, h))


def save(fig, path: str | Path) -> Path:
    """Write ``fig`` to ``path`` (suffix picks the format, default .png) and close it."""
    import matplotlib.pyplot as plt

    path = Path(path)
    if not path.suffix:
        path = path.with_suffix(".png")
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_cost_reports(reports: Sequence, path: str | Path) -> Path:
    """Space-time per scheme against ``k`` (left) and measured logical cycles per ``k`` (right)."""
    reports = sorted(reports, key=lambda r: r.k)
    ks = [r.k for r in reports]
    fig, (ax0, ax1) = new(1.2, ncols=2)
    for scheme in [row.scheme for row in reports[0].rows]:
        vals = [r.row(scheme).spacetime for r in reports]
        ax0.plot(ks, vals, marker="o", label=scheme)
    ax0.set_yscale("log")
    ax0.set_xticks(ks)
    ax0.set_xlabel("logical qubits $k$")
    ax0.set_ylabel("qubits x cycles")
    ax0.legend(frameon=False)
    ratio = [r.row("hgp-gppm").time / r.d / r.k for r in reports if any(x.scheme == "hgp-gppm" for x in r.rows)]
    if ratio:
        ax1.plot(ks[: len(ratio)], ratio, marker="s", color="k")
    ax1.set_xlabel("logical qubits $k$")
    ax1.set_ylabel("logical cycles / $k$")
    ax1.set_xticks(ks)
    return save(fig, path)
