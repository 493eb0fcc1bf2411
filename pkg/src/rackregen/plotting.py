"""Render figure datasets to image files with matplotlib (Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .figures import Figure  # noqa: E402

_MARKERS = ("s", "o", "x", "^")
_COLORS = ("red", "black", "blue", "green")
_LABELS = {"gamma": r"$\gamma$", "alpha": r"$\alpha$", "beta_e": r"$\beta_e$", "C_T1": r"$C_T^1$"}


def _legend(name: str) -> str:
    if name.startswith("tau="):
        return r"$\tau=" + name[4:] + "$"
    return name.capitalize()


def render_figure(fig: Figure, path: str | Path, dpi: int = 150) -> Path:
    """Plot every curve of ``fig`` (decorations included) into ``path``."""
    path = Path(path)
    figure, ax = plt.subplots(figsize=(6.4, 3.6))
    for i, curve in enumerate(fig.curves):
        xs = [float(r.x) for r in curve.rows]
        ys = [float(r.y) for r in curve.rows]
        ax.plot(xs, ys, marker=_MARKERS[i % 4], color=_COLORS[i % 4], markersize=4,
                linewidth=1, label=_legend(curve.name))
    ax.set_xlabel(_LABELS.get(fig.xlabel, fig.xlabel))
    ax.set_ylabel(_LABELS.get(fig.ylabel, fig.ylabel))
    data = [r for c in fig.curves for r in c.data_rows()]
    # same visible window as the original plots: the decorations run off the axes
    xmin = min(float(r.x) for r in data)
    ymin = min(float(r.y) for r in data)
    ax.set_xlim(xmin * 0.9, float(fig.xmax) if fig.xmax is not None else None)
    ax.set_ylim(ymin * 0.95, float(fig.ymax) if fig.ymax is not None else None)
    ax.set_title(f"Figure {fig.figure_id}")
    ax.legend(fontsize="small")
    ax.grid(True, linewidth=0.3)
    figure.tight_layout()
    # fixed metadata keeps repeated renders byte-identical
    figure.savefig(path, dpi=dpi, metadata={"Software": None})
    plt.close(figure)
    return path
