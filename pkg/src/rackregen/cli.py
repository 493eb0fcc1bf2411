"""Command-line interface.

Exit codes: 0 ok, 1 invalid input or configuration, 2 verification
mismatch, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .core import (
    CONFIG_KEYS,
    ConfigError,
    ModelKind,
    SystemConfig,
    config_from_mapping,
    fmt_decimal,
    fmt_exact,
    load_config,
    scalar,
    validate,
)
from .figures import FIGURE_IDS, build_figure, curve_filename, rows_to_csv, rows_to_json
from .flowgraph import OperatingPoint, SearchStats, analytic_mincut, worst_case_mincuts
from .income import income_I1, income_I2, income_I3, income_for, ordered_incomes, select_income
from .threshold import (
    POINT_FIELDS,
    DegenerateThreshold,
    Unrecoverable,
    basic_threshold,
    cost_ratio_eta,
    mbr_point,
    msr_point,
    point_at,
    threshold_for,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    # usage errors share the "invalid input" status; 2 means a verification mismatch
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


class Table:
    """Rows of string cells, rendered as CSV or JSON with the same keys."""

    def __init__(self, command: str, columns, meta: dict | None = None):
        self.command = command
        self.columns = list(columns)
        self.rows: list[dict[str, str]] = []
        self.meta = meta or {}

    def add(self, **cells) -> None:
        self.rows.append({c: cells.get(c, "") for c in self.columns})

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.command, **self.meta, "columns": self.columns, "rows": self.rows}
            return json.dumps(doc, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()


def _num(value: Fraction, exact: bool) -> str:
    return fmt_exact(value) if exact else fmt_decimal(value)


def _config(args) -> SystemConfig:
    cfg = load_config(args.config) if args.config else SystemConfig()
    overrides = {}
    for item in args.set or ():
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, value = (part.strip() for part in item.split("=", 1))
        overrides[key] = value
    if overrides:
        cfg = config_from_mapping(overrides, cfg)
    return cfg


def _checked(args) -> tuple[SystemConfig, ModelKind]:
    cfg = _config(args)
    model = ModelKind.parse(args.model)
    report = validate(cfg, model)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    report.raise_for_violations()
    return cfg, model


def _meta(cfg: SystemConfig, model: ModelKind) -> dict:
    return {"model": model.value, "config": cfg.as_dict()}


def cmd_curve(args) -> int:
    cfg, model = _checked(args)
    threshold = threshold_for(cfg, model)
    columns = ["kind", "index", *POINT_FIELDS] + [f"{f}_exact" for f in POINT_FIELDS]
    table = Table("curve", columns, _meta(cfg, model))
    entries = []
    for i in threshold.nonempty():
        entries.append(("breakpoint", str(i), point_at(cfg, model, threshold.breakpoints[i],
                                                       threshold.alpha_at_breakpoint(i), threshold)))
    for raw in args.beta or ():
        beta = scalar(raw)
        try:
            entries.append(("sample", "", point_at(cfg, model, beta, threshold=threshold)))
        except Unrecoverable as exc:
            raise ConfigError(str(exc)) from None
    # stable sort: a sample equal to a breakpoint lands after it
    entries.sort(key=lambda e: -e[2].beta_e)
    for kind, index, point in entries:
        values = point.as_dict()
        cells = {f: _num(values[f], args.exact) for f in POINT_FIELDS}
        cells.update({f"{f}_exact": fmt_exact(values[f]) for f in POINT_FIELDS})
        table.add(kind=kind, index=index, **cells)
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def cmd_points(args) -> int:
    cfg, model = _checked(args)
    table = Table("points", ["point", *POINT_FIELDS], _meta(cfg, model))
    for name, point in (("MSR", msr_point(cfg, model)), ("MBR", mbr_point(cfg, model))):
        values = point.as_dict()
        table.add(point=name, **{f: _num(values[f], args.exact) for f in POINT_FIELDS})
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def cmd_income(args) -> int:
    cfg, model = _checked(args)
    table = Table("income", ["multiset", "index", "value"], _meta(cfg, model))
    sets = []
    if model is ModelKind.RACK:
        sets.append(("I1", income_I1(cfg)))
        if cfg.k > cfg.d1:
            sets += [("I2", income_I2(cfg)), ("I3", income_I3(cfg))]
        sets.append(("selected", select_income(cfg)))
    else:
        sets.append((model.value, income_for(cfg, model)))
    for name, multiset in sets:
        for i, v in enumerate(multiset):
            table.add(multiset=name, index=str(i), value=_num(v, args.exact))
    for i, v in enumerate(ordered_incomes(cfg, model)):
        table.add(multiset="L", index=str(i), value=_num(v, args.exact))
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def cmd_cost(args) -> int:
    cfg, model = _checked(args)
    threshold = threshold_for(cfg, model)
    table = Table("cost", ["index", "beta_e", "cost1", "cost2", "eta"], _meta(cfg, model))
    base_len = len(basic_threshold(cfg.d, cfg.k, cfg.M)) if model is ModelKind.RACK else 0
    for i in threshold.nonempty():
        point = point_at(cfg, model, threshold.breakpoints[i], threshold.alpha_at_breakpoint(i), threshold)
        eta = _num(cost_ratio_eta(cfg, i), args.exact) if i < base_len else ""
        table.add(index=str(i), beta_e=_num(point.beta_e, args.exact), cost1=_num(point.cost1, args.exact),
                  cost2=_num(point.cost2, args.exact), eta=eta)
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def _grid(args, cfg: SystemConfig, model: ModelKind) -> tuple[list[OperatingPoint], set]:
    tau = Fraction(1) if model is ModelKind.BASIC else cfg.tau
    alphas = [scalar(a) for a in args.alpha or ()]
    betas = [scalar(b) for b in args.beta or ()]
    tight = set()
    if args.grid == "breakpoints":
        threshold = threshold_for(cfg, model)
        for i in threshold.nonempty():
            a, b = threshold.alpha_at_breakpoint(i), threshold.breakpoints[i]
            tight.add((a, b))
            alphas.append(a)
            betas.append(b)
    alphas = sorted(set(alphas))
    betas = sorted(set(betas), reverse=True)
    return [OperatingPoint(tau, a, b) for b in betas for a in alphas], tight


def cmd_verify(args) -> int:
    cfg, model = _checked(args)
    points, tight = _grid(args, cfg, model)
    income = income_for(cfg, model)

    def progress(stats: SearchStats) -> None:
        print(f"verify: {stats.states} states, {stats.attachments} attachments, {stats.flows} flows",
              file=sys.stderr, flush=True)

    print(f"verify: {len(points)} grid points", file=sys.stderr, flush=True)
    results = worst_case_mincuts(cfg, points, model, budget=args.budget, max_repairs=args.max_repairs,
                                 exhaustive=args.exhaustive, progress=progress) if points else []
    columns = ["alpha", "beta_e", "oracle", "analytic", "agree", "at_breakpoint", "witness"]
    table = Table("verify", columns, _meta(cfg, model))
    mismatches = 0
    exhausted = False
    for point, result in zip(points, results):
        analytic = analytic_mincut(income, point.alpha, point.beta_e)
        exhausted |= result.exhausted
        agree = result.value == analytic
        mismatches += not agree
        witness = json.dumps(result.scenario.to_json(), separators=(",", ":")) \
            if not agree and result.scenario is not None else ""
        table.add(alpha=_num(point.alpha, args.exact), beta_e=_num(point.beta_e, args.exact),
                  oracle="" if result.value is None else _num(result.value, args.exact),
                  analytic=_num(analytic, args.exact), agree="yes" if agree else "no",
                  at_breakpoint="yes" if (point.alpha, point.beta_e) in tight else "no", witness=witness)
    sys.stdout.write(table.render(args.format))
    print(f"verify: {len(points) - mismatches}/{len(points)} points agree", file=sys.stderr)
    if exhausted:
        print("verify: search budget exhausted; results are partial", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_figure(args) -> int:
    ids = FIGURE_IDS if args.figure_id.lower() == "all" else (args.figure_id.upper(),)
    if any(fid not in FIGURE_IDS for fid in ids):
        raise ConfigError(f"unknown figure {args.figure_id!r} (expected one of {', '.join(FIGURE_IDS)} or all)")
    figures = [build_figure(fid) for fid in ids]
    render = rows_to_json if args.format == "json" else rows_to_csv
    suffix = ".json" if args.format == "json" else ".csv"
    if not args.out_dir:
        sys.stdout.write(render([row for fig in figures for row in fig.rows], args.exact))
        return EXIT_OK
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for fig in figures:
        for curve in fig.curves:
            path = out / curve_filename(curve, suffix)
            path.write_text(render(curve.rows, args.exact), encoding="utf-8")
            print(path)
        if not args.no_plot:
            from .plotting import render_figure

            print(render_figure(fig, out / f"fig{fig.figure_id}.png"))
    return EXIT_OK


def _common_flags(top: bool) -> argparse.ArgumentParser:
    # accepted before or after the subcommand; only the top level sets defaults
    common = argparse.ArgumentParser(add_help=False)
    default = (lambda value: value) if top else (lambda value: argparse.SUPPRESS)
    common.add_argument("--model", default=default("rack"), choices=[m.value for m in ModelKind],
                        help="cost model (default: rack)")
    common.add_argument("--config", default=default(None),
                        help="flat key=value file with keys " + ", ".join(CONFIG_KEYS))
    common.add_argument("--set", action="append", default=default(None), metavar="KEY=VALUE",
                        help="override one config field; repeatable")
    common.add_argument("--format", default=default("csv"), choices=("csv", "json"))
    common.add_argument("--exact", action="store_true", default=default(False),
                        help="print p/q instead of decimals")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(top=False)
    parser = _Parser(prog="rackregen", description="Storage vs repair-bandwidth tradeoffs for two-rack "
                                                     "regenerating codes.", parents=[_common_flags(top=True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("curve", parents=[common], help="operating points at every breakpoint")
    p.add_argument("--beta", action="append", help="extra beta_e sample; repeatable")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("points", parents=[common], help="MSR and MBR points")
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("income", parents=[common], help="income multisets and the sorted list L")
    p.set_defaults(func=cmd_income)

    p = sub.add_parser("cost", parents=[common], help="repair costs at the breakpoints")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("verify", parents=[common], help="check analytic mincuts against the flow-graph oracle")
    p.add_argument("--grid", default="breakpoints", choices=("breakpoints", "none"),
                   help="breakpoints: every breakpoint beta_e crossed with every breakpoint alpha")
    p.add_argument("--alpha", action="append", help="extra alpha value; repeatable")
    p.add_argument("--beta", action="append", help="extra beta_e value; repeatable")
    p.add_argument("--max-repairs", type=int, help="repairs per scenario (default k)")
    p.add_argument("--exhaustive", action="store_true",
                   help="enumerate every scenario with max-flow instead of the cut-profile search")
    p.add_argument("--budget", type=int, help="state budget for --exhaustive")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", parents=[common], help="figure datasets (3L, 3R, 4L, 4R or all)")
    p.add_argument("figure_id")
    p.add_argument("--out-dir", help="write one file per curve and a PNG per figure here")
    p.add_argument("--no-plot", action="store_true", help="skip the PNG files")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DegenerateThreshold, Unrecoverable, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
