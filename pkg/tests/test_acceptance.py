"""Acceptance criteria 1-10.

Each criterion is a function returning ``(ok, summary)``; the tests below
record the result in ``RESULTS`` (printed by conftest at the end of the
session) and then assert it.  ``python tests/test_acceptance.py`` runs them
without pytest.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import tempfile
import time
from decimal import Decimal
from fractions import Fraction as F
from pathlib import Path

import pytest

from rackregen.core import ModelKind, SystemConfig, to_decimal, validate
from rackregen.figures import TALL, WIDE, build_figure
from rackregen.flowgraph import OperatingPoint, analytic_mincut, profile_worst_case
from rackregen.income import ordered_incomes, select_income
from rackregen.threshold import (
    basic_threshold,
    cost_ratio_eta,
    inverse,
    mbr_point,
    printed_mbr_alpha,
    repair_cost,
    threshold_for,
)

REFERENCE = json.loads((Path(__file__).parent / "fixtures" / "reference_coordinates.json").read_text())
RESULTS: dict[int, tuple[bool, str]] = {}

WORKED = SystemConfig(M=F(1), n1=3, n2=3, k=4, d1=1, d2=3, tau=F(2))


def _ten_digits(value: F, printed: str) -> bool:
    # agreement to 10 significant digits: within one unit of the 10th digit
    if to_decimal(value, 10) == Decimal(printed):
        return True
    diff = abs(Decimal(value.numerator) / Decimal(value.denominator) - Decimal(printed))
    return diff < Decimal(1).scaleb(Decimal(printed).adjusted() - 9)


def _compare_figure(figure_id: str, data_only: bool = True):
    """(points compared, mismatches, points off in the last printed digit)."""
    checked, bad, last_digit = 0, [], []
    for curve in build_figure(figure_id).curves:
        ref = REFERENCE[figure_id][curve.name]
        if len(ref) != len(curve.rows):
            bad.append((curve.name, "row count", len(ref), len(curve.rows)))
            continue
        for (x, y), row in zip(ref, curve.rows):
            if data_only and row.decoration:
                continue
            for printed, value in ((x, row.x), (y, row.y)):
                checked += 1
                if not _ten_digits(value, printed):
                    bad.append((curve.name, printed, str(value)))
                elif to_decimal(value, 10) != Decimal(printed):
                    last_digit.append((curve.name, printed, str(value)))
    return checked, bad, last_digit


def criterion_1():
    t = threshold_for(WORKED)
    breakpoints_ok = t.breakpoints == (F(1, 8), F(1, 11), F(1, 13), F(1, 14))
    expected = [(F(0), F(1, 4)), (F(-2, 3), F(1, 3)), (F(-5, 2), F(1, 2)), (F(-9), F(1))]
    segments = [t.slope_intercept(i) for i in range(4)]
    ok = breakpoints_ok and segments == expected
    return ok, f"worked-example breakpoints {[str(b) for b in t.breakpoints]}, segments exact: {segments == expected}"


def criterion_2():
    start = time.perf_counter()
    checked, bad, _ = _compare_figure("3L")
    elapsed = time.perf_counter() - start
    ok = not bad and checked > 0 and elapsed < 1
    return ok, f"3L: {checked} coordinates, {len(bad)} mismatches at 10 digits, {elapsed:.3f}s"


def criterion_3():
    checked, bad, last = _compare_figure("3R")
    counts = {c.name: len(c.data_rows()) for c in build_figure("3R").curves}
    printed = {name: len(pts) - 2 for name, pts in REFERENCE["3R"].items()}
    tau2 = threshold_for(TALL.with_(tau=F(2)))
    collapsed = len(tau2) == 10 and counts["tau=2"] == len(tau2.nonempty()) == printed["tau=2"]
    ok = not bad and counts == printed and collapsed
    note = f"; {len(last)} last-digit print differences ({', '.join(p for _, p, _ in last)})" if last else ""
    return ok, (f"3R: {checked} coordinates, {len(bad)} mismatches at 10 digits{note}; "
                f"tau=2 keeps {counts['tau=2']} of {len(tau2)} breakpoints (printed: {printed['tau=2']})")


def criterion_4():
    checked, bad, _ = _compare_figure("4L")
    t1 = threshold_for(WIDE)
    costs = [repair_cost(WIDE, b)[0] for b in t1.breakpoints]
    named = ("1.65", "1.5", "1.404255319", "1.346938776", "1.32")
    named_ok = all(to_decimal(c, 10) == Decimal(p) for c, p in zip(costs, named)) and len(costs) == 5
    ok = not bad and named_ok
    return ok, f"4L: {checked} coordinates, {len(bad)} mismatches at 10 digits; tau=1 C_T1 named values ok: {named_ok}"


def criterion_5():
    checked, bad, _ = _compare_figure("4R")
    cfg = TALL.with_(tau=F(2))
    rack = threshold_for(cfg, ModelKind.RACK)
    static = threshold_for(cfg, ModelKind.STATIC)
    top = min(rack.alpha_at_breakpoint(rack.nonempty()[-1]), static.alpha_at_breakpoint(static.nonempty()[-1]))
    levels = {cfg.M / cfg.k, top}
    for t in (rack, static):
        levels |= {t.alpha_at_breakpoint(i) for i in t.nonempty() if t.alpha_at_breakpoint(i) <= top}
    ordered = sorted(levels)
    # also between consecutive levels, where both curves are straight
    levels |= {(a + b) / 2 for a, b in zip(ordered, ordered[1:])}
    violations = [a for a in sorted(levels) if not inverse(rack, a) <= inverse(static, a)]
    ok = not bad and not violations
    return ok, (f"4R: {checked} coordinates, {len(bad)} mismatches; rack beta_e <= static beta_e at "
                f"{len(levels) - len(violations)}/{len(levels)} common alpha levels")


def criterion_6(seed: int = 20240601):
    rng = random.Random(seed)
    bad = []
    for _ in range(50):
        d = rng.randint(1, 15)
        k = rng.randint(1, d)
        d1 = rng.randint(0, d // 2)
        d2 = d - d1
        cfg = SystemConfig(M=F(1), n1=d1 + 1, n2=d2 + 1, k=k, d1=d1, d2=d2)
        gen = threshold_for(cfg, ModelKind.RACK)
        basic = basic_threshold(d, k, cfg.M)
        same = (len(gen) == len(basic)
                and all(d * g == b for g, b in zip(gen.breakpoints, basic.breakpoints))
                and all(gen.alpha_at_breakpoint(i) == basic.alpha_at_breakpoint(i) for i in range(len(gen))))
        if not same:
            bad.append((k, d, d1))
    return not bad, f"50 random (k, d), seed {seed}: {50 - len(bad)} exact matches with gamma = d beta"


def _valid_rack_configs(count: int, seed: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n1, n2 = rng.randint(1, 12), rng.randint(1, 12)
        d1 = rng.randint(0, n1 - 1)
        d2 = rng.randint(d1, max(d1, n2))
        k = rng.randint(1, max(1, min(n1 + n2, d1 + d2)))
        tau = F(rng.randint(10, 60), 10)
        cfg = SystemConfig(M=F(rng.randint(1, 5)), n1=n1, n2=n2, k=k, d1=d1, d2=d2, tau=tau)
        if validate(cfg).ok:
            out.append(cfg)
    return out


def criterion_8(seed: int = 7):
    configs = _valid_rack_configs(200, seed)
    bad = [cfg for cfg in configs if mbr_point(cfg).gamma1 != mbr_point(cfg).alpha]
    printed = printed_mbr_alpha(ordered_incomes(WORKED, ModelKind.RACK), WORKED.M)
    evaluated = mbr_point(WORKED).alpha
    ok = not bad and printed == F(17, 14) and evaluated == F(5, 14)
    return ok, (f"gamma1(MBR) = alpha(MBR) on {len(configs) - len(bad)}/{len(configs)} configs; "
                f"worked example printed closed form {printed}, evaluated threshold {evaluated}")


def criterion_9():
    taus = (F(1), F(2), F(5), F(10))
    t = {tau: threshold_for(WIDE.with_(tau=tau)) for tau in taus}
    decreasing = all(
        repair_cost(WIDE.with_(tau=a), t[a].breakpoints[i])[0] > repair_cost(WIDE.with_(tau=b), t[b].breakpoints[i])[0]
        for i in range(WIDE.k) for a, b in zip(taus, taus[1:]))
    eta_taus = (F(101, 100), F(6, 5), F(3, 2), F(2), F(3), F(5), F(10), F(100))
    etas = [cost_ratio_eta(WIDE.with_(tau=tau), i) for tau in eta_taus for i in range(WIDE.k)]
    below = all(e < 1 for e in etas)
    return decreasing and below, (f"C_T1 strictly decreasing over tau 1,2,5,10 at all {WIDE.k} indices: {decreasing}; "
                                  f"eta < 1 at {sum(e < 1 for e in etas)}/{len(etas)} (tau, index) pairs")


def _figure_suite(out: Path) -> dict[str, bytes]:
    out.mkdir()
    proc = subprocess.run([sys.executable, "-m", "rackregen", "figure", "all", "--out-dir", str(out), "--no-plot"],
                          capture_output=True, check=True)
    files = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    stdout = subprocess.run([sys.executable, "-m", "rackregen", "figure", "all"], capture_output=True, check=True)
    files["<stdout>"] = stdout.stdout
    files["<listing>"] = proc.stdout.replace(str(out).encode(), b"")
    return files


def criterion_10():
    with tempfile.TemporaryDirectory() as tmp:
        first = _figure_suite(Path(tmp) / "a")
        second = _figure_suite(Path(tmp) / "b")
    ok = first == second and len(first) > 2
    return ok, f"two runs of the figure suite: {len(first) - 2} CSV files + stdout, byte-identical: {first == second}"


def rack_sweep_configs():
    for n1 in range(1, 7):
        for n2 in range(1, 8 - n1):
            for k in range(1, 6):
                for d1 in range(n1):
                    for d2 in range(d1, n2 + 1):
                        for tau in (1, 2, 3):
                            cfg = SystemConfig(M=F(1), n1=n1, n2=n2, k=k, d1=d1, d2=d2, tau=F(tau))
                            if validate(cfg).ok:
                                yield cfg


def criterion_7():
    start = time.perf_counter()
    configs = points = 0
    mismatch_cfgs, mismatch_pts, tight_fail = set(), 0, 0
    by_tau = {1: [0, 0], 2: [0, 0], 3: [0, 0]}
    examples = []
    for cfg in rack_sweep_configs():
        t = threshold_for(cfg)
        idx = t.nonempty()
        grid = [OperatingPoint(cfg.tau, t.alpha_at_breakpoint(a), t.breakpoints[b]) for b in idx for a in idx]
        tight = {(t.alpha_at_breakpoint(i), t.breakpoints[i]) for i in idx}
        income = select_income(cfg)
        results = profile_worst_case(cfg, grid)
        configs += 1
        bad_here = False
        for p, r in zip(grid, results):
            points += 1
            analytic = analytic_mincut(income, p.alpha, p.beta_e)
            if r.value != analytic:
                mismatch_pts += 1
                bad_here = True
                if len(examples) < 3 and (p.alpha, p.beta_e) in tight:
                    examples.append(f"(n1,n2,k,d1,d2,tau)=({cfg.n1},{cfg.n2},{cfg.k},{cfg.d1},{cfg.d2},{cfg.tau}) "
                                    f"alpha={p.alpha} beta_e={p.beta_e}: oracle {r.value}, analytic {analytic}")
            if (p.alpha, p.beta_e) in tight and r.value != cfg.M:
                tight_fail += 1
        by_tau[int(cfg.tau)][0] += 1
        by_tau[int(cfg.tau)][1] += bad_here
        if bad_here:
            mismatch_cfgs.add((cfg.n1, cfg.n2, cfg.k, cfg.d1, cfg.d2, cfg.tau))
    elapsed = time.perf_counter() - start
    ok = not mismatch_cfgs and tight_fail == 0
    per_tau = ", ".join(f"tau={tau}: {bad}/{total}" for tau, (total, bad) in by_tau.items())
    summary = (f"{configs} configs, {points} grid points: {mismatch_pts} points in {len(mismatch_cfgs)} configs "
               f"disagree ({per_tau}); {tight_fail} breakpoints below M; {elapsed:.0f}s")
    if examples:
        summary += "; e.g. " + examples[0]
    return ok, summary


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def _check(number: int) -> None:
    ok, line = CRITERIA[number]()
    RESULTS[number] = (ok, line)
    print(f"[{'PASS' if ok else 'FAIL'}] {number}. {line}")
    assert ok, line


@pytest.mark.parametrize("number", list(CRITERIA))
def test_criterion(number):
    _check(number)


if __name__ == "__main__":
    failed = 0
    for number, fn in CRITERIA.items():
        ok, line = fn()
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {number}. {line}", flush=True)
    sys.exit(1 if failed else 0)
