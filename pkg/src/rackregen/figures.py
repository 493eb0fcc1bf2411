"""Hard-coded figure datasets: tradeoff curves, cost curves and rack vs static.

Each figure is a list of curves; a curve is a list of rows.  Rows flagged as
decorations are the off-curve points drawn at the ends of a plotted curve
(a horizontal lead-in from the right and the vertical feasibility wall at the
MBR end).  They are not threshold values.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .core import ModelKind, SystemConfig, fmt_decimal, fmt_exact
from .threshold import breakpoint_points, threshold_for, repair_cost

FIGURE_IDS = ("3L", "3R", "4L", "4R")
FIGURE_COLUMNS = ("figure", "curve", "model", "tau", "index", "decoration", "x", "y", "x_exact", "y_exact")

# k <= d1 family; node counts are not given for it and do not enter the
# curves as long as d1 <= n1 - 1 and d2 <= n2.
WIDE = SystemConfig(M=Fraction(1), n1=7, n2=7, k=5, d1=6, d2=6, Cc=Fraction(1), Ce=Fraction(10))
# k > d1 family
TALL = SystemConfig(M=Fraction(1), n1=6, n2=6, k=10, d1=5, d2=6)

_F = Fraction


@dataclass(frozen=True)
class FigureRow:
    figure: str
    curve: str
    model: str
    tau: Fraction
    index: int
    x: Fraction
    y: Fraction
    decoration: str = ""

    def cells(self, exact_only: bool = False) -> dict[str, str]:
        out = {
            "figure": self.figure,
            "curve": self.curve,
            "model": self.model,
            "tau": fmt_exact(self.tau),
            "index": str(self.index),
            "decoration": self.decoration,
            "x": fmt_exact(self.x) if exact_only else fmt_decimal(self.x),
            "y": fmt_exact(self.y) if exact_only else fmt_decimal(self.y),
            "x_exact": fmt_exact(self.x),
            "y_exact": fmt_exact(self.y),
        }
        return out


@dataclass(frozen=True)
class Curve:
    figure: str
    name: str
    model: ModelKind
    cfg: SystemConfig
    rows: tuple[FigureRow, ...]

    def data_rows(self) -> list[FigureRow]:
        return [r for r in self.rows if not r.decoration]


@dataclass(frozen=True)
class Figure:
    figure_id: str
    xlabel: str
    ylabel: str
    curves: tuple[Curve, ...]
    xmax: Fraction | None = None
    ymax: Fraction | None = None

    @property
    def rows(self) -> list[FigureRow]:
        return [row for curve in self.curves for row in curve.rows]


def _curve(figure: str, name: str, cfg: SystemConfig, model: ModelKind, points,
           start=None, end_y=None) -> Curve:
    rows = []
    body = list(points)
    if start is not None:
        rows.append(FigureRow(figure, name, model.value, cfg.tau, 0, start[0], start[1], "start"))
    for x, y in body:
        rows.append(FigureRow(figure, name, model.value, cfg.tau, len(rows), x, y))
    if end_y is not None:
        rows.append(FigureRow(figure, name, model.value, cfg.tau, len(rows), body[-1][0], end_y, "end"))
    return Curve(figure, name, model, cfg, tuple(rows))


def _tau_label(tau: Fraction) -> str:
    return f"tau={fmt_exact(tau)}"


def figure_3L() -> Figure:
    curves = []
    for tau in (_F(1), _F(2), _F(5), _F(10)):
        cfg = WIDE.with_(tau=tau)
        pts = [(p.gamma1, p.alpha) for p in breakpoint_points(cfg, ModelKind.RACK)]
        curves.append(_curve("3L", _tau_label(tau), cfg, ModelKind.RACK, pts, (_F(3, 5), _F(1, 5)), _F(2, 5)))
    return Figure("3L", "gamma", "alpha", tuple(curves), _F(58, 100), _F(3, 10))


def figure_3R() -> Figure:
    curves = []
    for tau in (_F(1), _F(6, 5), _F(2), _F(10)):
        cfg = TALL.with_(tau=tau)
        pts = [(p.beta_e, p.alpha) for p in breakpoint_points(cfg, ModelKind.RACK)]
        wall = _F(3, 10) if tau == 1 else _F(2, 5)
        curves.append(_curve("3R", _tau_label(tau), cfg, ModelKind.RACK, pts, (_F(11, 10), _F(1, 10)), wall))
    return Figure("3R", "beta_e", "alpha", tuple(curves), _F(55, 1000), _F(18, 100))


def figure_4L() -> Figure:
    curves = []
    for tau in (_F(1), _F(2), _F(5), _F(10)):
        cfg = WIDE.with_(tau=tau)
        threshold = threshold_for(cfg, ModelKind.RACK)
        pts = [(b, repair_cost(cfg, b)[0]) for b in threshold.breakpoints]
        curves.append(_curve("4L", _tau_label(tau), cfg, ModelKind.RACK, pts))
    return Figure("4L", "beta_e", "C_T1", tuple(curves), _F(4, 100), _F(18, 10))


def figure_4R() -> Figure:
    cfg = TALL.with_(tau=_F(2))
    curves = []
    for model, wall in ((ModelKind.RACK, _F(2, 5)), (ModelKind.STATIC, _F(3, 10))):
        pts = [(p.beta_e, p.alpha) for p in breakpoint_points(cfg, model)]
        curves.append(_curve("4R", model.value, cfg, model, pts, (_F(11, 10), _F(1, 10)), wall))
    return Figure("4R", "beta_e", "alpha", tuple(curves), _F(5, 100), _F(18, 100))


_BUILDERS = {"3L": figure_3L, "3R": figure_3R, "4L": figure_4L, "4R": figure_4R}


def build_figure(figure_id: str) -> Figure:
    key = figure_id.strip().upper()
    if key not in _BUILDERS:
        raise KeyError(f"unknown figure {figure_id!r} (expected one of {', '.join(FIGURE_IDS)})")
    return _BUILDERS[key]()


def rows_to_csv(rows, exact_only: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIGURE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.cells(exact_only))
    return buf.getvalue()


def rows_to_json(rows, exact_only: bool = False) -> str:
    return json.dumps([row.cells(exact_only) for row in rows], indent=2) + "\n"


def curve_filename(curve: Curve, suffix: str = ".csv") -> str:
    name = curve.name.replace("=", "").replace("/", "_")
    return f"fig{curve.figure}_{name}{suffix}"
