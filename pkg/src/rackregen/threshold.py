"""Piecewise-linear storage threshold, operating points and repair costs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ModelKind, SystemConfig, fmt_exact, scalar
from .income import OrderedIncomeList, ordered_incomes


class Unrecoverable(ValueError):
    """Bandwidth below the last breakpoint: no storage level recovers the file."""


class DegenerateThreshold(ValueError):
    """A breakpoint denominator vanished (zero incomes at the front of L)."""


@dataclass(frozen=True)
class PiecewiseThreshold:
    """Minimum storage per node as a function of per-helper bandwidth.

    On ``[f(i), f(i-1))`` the value is ``(M - g(i) x) / (k - i)`` where
    ``f = breakpoints`` and ``g = prefix_sums``; ``x >= f(0)`` gives ``M/k``.
    ``x`` is beta_e for the generalized form and gamma for the basic form.
    """

    M: Fraction
    k: int
    L: tuple[Fraction, ...]
    breakpoints: tuple[Fraction, ...]
    prefix_sums: tuple[Fraction, ...]
    truncated_count: int = 0

    def __len__(self) -> int:
        return len(self.breakpoints)

    @property
    def last(self) -> int:
        return len(self.breakpoints) - 1

    def segment(self, i: int, x: Fraction) -> Fraction:
        """Value of segment ``i`` at ``x`` (no interval check)."""
        if i == 0:
            return self.M / self.k
        return (self.M - self.prefix_sums[i] * x) / (self.k - i)

    def slope_intercept(self, i: int) -> tuple[Fraction, Fraction]:
        if i == 0:
            return Fraction(0), self.M / self.k
        return -self.prefix_sums[i] / (self.k - i), self.M / (self.k - i)

    def alpha_at_breakpoint(self, i: int) -> Fraction:
        return self.segment(i, self.breakpoints[i])

    def nonempty(self) -> list[int]:
        """Indices whose interval ``[f(i), f(i-1))`` is not empty."""
        f = self.breakpoints
        return [i for i in range(len(f)) if i == 0 or f[i] < f[i - 1]]

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def to_json(self) -> dict:
        segments = []
        for i in range(len(self.breakpoints)):
            slope, intercept = self.slope_intercept(i)
            segments.append({"slope_num": fmt_exact(slope), "intercept": fmt_exact(intercept)})
        return {
            "k": self.k,
            "M": fmt_exact(self.M),
            "L": [fmt_exact(v) for v in self.L],
            "breakpoints": [fmt_exact(v) for v in self.breakpoints],
            "segments": segments,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "PiecewiseThreshold":
        if isinstance(data, str):
            data = json.loads(data)
        L = OrderedIncomeList(tuple(scalar(v) for v in data["L"]), int(data["k"]))
        return generalized_threshold(L, scalar(data["M"]))


def generalized_threshold(L: OrderedIncomeList | Sequence, M, k: int | None = None) -> PiecewiseThreshold:
    """Threshold from a sorted income list.

    ``f(i) = M / (L[i] (k - i) + g(i))`` with ``g(i) = sum(L[:i])``.
    """
    M = scalar(M)
    if isinstance(L, OrderedIncomeList):
        k = L.k if k is None else k
        truncated = L.truncated_count
        values = L.values
    else:
        values = tuple(scalar(v) for v in L)
        truncated = 0
        if k is None:
            k = len(values)
    if not values:
        raise ValueError("empty income list")
    if len(values) > k:
        raise ValueError("more incomes than k")
    prefix = [Fraction(0)]
    for v in values[:-1]:
        prefix.append(prefix[-1] + v)
    breakpoints = []
    for i, (v, g) in enumerate(zip(values, prefix)):
        denom = v * (k - i) + g
        if denom == 0:
            raise DegenerateThreshold(f"zero denominator at breakpoint {i}: incomes {list(map(str, values))}")
        breakpoints.append(M / denom)
    return PiecewiseThreshold(M, k, tuple(values), tuple(breakpoints), tuple(prefix), truncated)


def basic_threshold(d: int, k: int, M) -> PiecewiseThreshold:
    """Homogeneous-model threshold over gamma = d * beta, from its closed form."""
    if k > d:
        raise ValueError(f"basic threshold needs k <= d (k={k}, d={d})")
    M = scalar(M)
    f = [Fraction(2 * d) * M / ((2 * k - i - 1) * i + 2 * k * (d - k + 1)) for i in range(k)]
    g = [Fraction((2 * d - 2 * k + i + 1) * i, 2 * d) for i in range(k)]
    # per-gamma income list implied by g and the last breakpoint
    L = [g[i + 1] - g[i] for i in range(k - 1)]
    L.append(M / f[-1] - g[-1])
    return PiecewiseThreshold(M, k, tuple(L), tuple(f), tuple(g))


def evaluate(threshold: PiecewiseThreshold, x) -> Fraction:
    """``alpha*(x)``; intervals are closed on the left."""
    x = scalar(x)
    for i, f in enumerate(threshold.breakpoints):
        if x >= f:
            return threshold.segment(i, x)
    raise Unrecoverable(f"{x} is below the last breakpoint {threshold.breakpoints[-1]}")


# ``eval`` shadows the builtin; keep the public name but alias it.
eval_threshold = evaluate


def inverse(threshold: PiecewiseThreshold, alpha) -> Fraction | None:
    """Smallest ``x`` with ``alpha*(x) <= alpha``; ``None`` if none exists."""
    alpha = scalar(alpha)
    f = threshold.breakpoints
    idx = threshold.nonempty()
    if alpha >= threshold.alpha_at_breakpoint(idx[-1]):
        return f[idx[-1]]
    # walk from the bandwidth-poor end; alpha* falls as x grows
    for prev, i in reversed(list(zip(idx, idx[1:]))):
        if threshold.alpha_at_breakpoint(prev) <= alpha:
            return (threshold.M - (threshold.k - i) * alpha) / threshold.prefix_sums[i]
    return None


def threshold_for(cfg: SystemConfig, model: ModelKind | str = ModelKind.RACK) -> PiecewiseThreshold:
    """Generalized threshold (over beta_e) for a configured model."""
    return generalized_threshold(ordered_incomes(cfg, model), cfg.M)


def printed_mbr_alpha(L: OrderedIncomeList | Sequence, M, k: int | None = None) -> Fraction:
    """The MBR storage closed form exactly as it appears in print.

    Kept only to document that it disagrees with evaluating the threshold at
    its last breakpoint; nothing else uses it.
    """
    values = L.values if isinstance(L, OrderedIncomeList) else tuple(scalar(v) for v in L)
    if k is None:
        k = L.k if isinstance(L, OrderedIncomeList) else len(values)
    M = scalar(M)
    n = len(values)
    last = values[-1]
    g = sum(values[:-1], Fraction(0))
    return M * (last * k - n + 1) / ((k - n + 1) ** 2 * last + g)


@dataclass(frozen=True)
class TradeoffPoint:
    beta_e: Fraction
    alpha: Fraction
    gamma1: Fraction
    gamma2: Fraction
    cost1: Fraction
    cost2: Fraction

    def as_dict(self) -> dict[str, Fraction]:
        return {
            "beta_e": self.beta_e,
            "alpha": self.alpha,
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "cost1": self.cost1,
            "cost2": self.cost2,
        }


POINT_FIELDS = ("beta_e", "alpha", "gamma1", "gamma2", "cost1", "cost2")


def _effective(cfg: SystemConfig, model: ModelKind) -> SystemConfig:
    # the homogeneous model has one helper class
    return cfg.with_(tau=Fraction(1)) if model is ModelKind.BASIC else cfg


def repair_cost(cfg: SystemConfig, beta_e) -> tuple[Fraction, Fraction]:
    """``(C_T1, C_T2)`` for newcomers in rack 1 and rack 2."""
    beta_e = scalar(beta_e)
    cost1 = beta_e * (cfg.Cc * cfg.d1 * cfg.tau + cfg.Ce * cfg.d2)
    cost2 = beta_e * (cfg.Cc * cfg.d2 * cfg.tau + cfg.Ce * cfg.d1)
    return cost1, cost2


def point_at(cfg: SystemConfig, model: ModelKind | str, beta_e, alpha=None,
             threshold: PiecewiseThreshold | None = None) -> TradeoffPoint:
    """Operating point at ``beta_e``; ``alpha`` defaults to the threshold value."""
    model = ModelKind.parse(model)
    beta_e = scalar(beta_e)
    if alpha is None:
        threshold = threshold or threshold_for(cfg, model)
        alpha = evaluate(threshold, beta_e)
    eff = _effective(cfg, model)
    gamma1 = eff.gamma1_coeff * beta_e
    if model is ModelKind.RACK:
        gamma2 = eff.gamma2_coeff * beta_e
        cost1, cost2 = repair_cost(eff, beta_e)
    else:
        # one bandwidth and one cost for every newcomer
        gamma2 = gamma1
        cost1 = cost2 = repair_cost(eff, beta_e)[0]
    return TradeoffPoint(beta_e, scalar(alpha), gamma1, gamma2, cost1, cost2)


def msr_point(cfg: SystemConfig, model: ModelKind | str = ModelKind.RACK) -> TradeoffPoint:
    threshold = threshold_for(cfg, model)
    return point_at(cfg, model, threshold.breakpoints[0], cfg.M / cfg.k)


def mbr_point(cfg: SystemConfig, model: ModelKind | str = ModelKind.RACK) -> TradeoffPoint:
    threshold = threshold_for(cfg, model)
    beta = threshold.breakpoints[-1]
    return point_at(cfg, model, beta, evaluate(threshold, beta))


def breakpoint_points(cfg: SystemConfig, model: ModelKind | str = ModelKind.RACK,
                      collapse: bool = True) -> list[TradeoffPoint]:
    """Operating points at every breakpoint, largest beta_e first.

    With ``collapse`` the repeated breakpoints of empty intervals are dropped.
    """
    threshold = threshold_for(cfg, model)
    indices = threshold.nonempty() if collapse else range(len(threshold))
    return [point_at(cfg, model, threshold.breakpoints[i], threshold.alpha_at_breakpoint(i)) for i in indices]


def cost_ratio_eta(cfg: SystemConfig, i: int) -> Fraction:
    """Rack-1 repair cost at breakpoint ``i`` relative to the same breakpoint at tau = 1.

    The tau = 1 reference is the homogeneous threshold over gamma, converted
    with ``beta = gamma / d``.
    """
    rack = threshold_for(cfg, ModelKind.RACK)
    if not 0 <= i < len(rack):
        raise IndexError(f"breakpoint index {i} outside 0..{len(rack) - 1}")
    base = basic_threshold(cfg.d, cfg.k, cfg.M)
    if i >= len(base):
        raise IndexError(f"breakpoint index {i} outside the tau=1 curve")
    cost_tau = repair_cost(cfg, rack.breakpoints[i])[0]
    cost_one = repair_cost(cfg.with_(tau=Fraction(1)), base.breakpoints[i] / cfg.d)[0]
    return cost_tau / cost_one
