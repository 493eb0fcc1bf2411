"""Income multisets of the k newcomers that a data collector reads from.

An income is the total capacity entering a newcomer from nodes outside the
data collector's side of the cut.  All incomes here are stored as their
coefficient on ``beta_e`` (``income = c * beta_e``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ConfigError, ModelKind, SystemConfig, fmt_exact, scalar


@dataclass(frozen=True)
class IncomeMultiset:
    entries: tuple[Fraction, ...]
    provenance: str

    def __post_init__(self) -> None:
        entries = tuple(scalar(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise ValueError("incomes must be non-negative")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def __add__(self, other: "IncomeMultiset") -> "IncomeMultiset":
        return IncomeMultiset(self.entries + other.entries, f"{self.provenance}+{other.provenance}")

    def to_json(self) -> dict:
        return {"provenance": self.provenance, "entries": [fmt_exact(e) for e in self.entries]}

    @classmethod
    def from_json(cls, data: dict | str) -> "IncomeMultiset":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(scalar(e) for e in data["entries"]), data["provenance"])


@dataclass(frozen=True)
class OrderedIncomeList:
    """Sorted incomes that parametrise the threshold function."""

    values: tuple[Fraction, ...]
    k: int
    truncated_count: int = 0

    def __post_init__(self) -> None:
        values = tuple(scalar(v) for v in self.values)
        if not values:
            raise ValueError("ordered income list is empty")
        if len(values) > self.k:
            raise ValueError(f"{len(values)} incomes for k={self.k}")
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("incomes must be sorted ascending")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)


def _clamp(values) -> tuple[Fraction, ...]:
    return tuple(max(Fraction(0), scalar(v)) for v in values)


def _pad(values: tuple[Fraction, ...], length: int) -> tuple[Fraction, ...]:
    return values + (Fraction(0),) * max(0, length - len(values))


def income_I1(cfg: SystemConfig) -> IncomeMultiset:
    """Rack-1 newcomers replaced first: ``(d1 - i) tau + d2``."""
    last = min(cfg.d1, cfg.k - 1)
    return IncomeMultiset(_clamp((cfg.d1 - i) * cfg.tau + cfg.d2 for i in range(last + 1)), "I1")


def _require_k_above_d1(cfg: SystemConfig, name: str) -> None:
    if cfg.k <= cfg.d1:
        raise ConfigError(f"{name} is only defined for k > d1 (k={cfg.k}, d1={cfg.d1})")


def income_I2(cfg: SystemConfig) -> IncomeMultiset:
    """Remaining rack-1 newcomers, then rack-2 newcomers.

    The constant-``d2`` block comes first, then ``(d2 - i) tau`` for
    ``i = 1 .. min(d2, k - n1)``.  Missing entries are zeros.
    """
    _require_k_above_d1(cfg, "I2")
    size = cfg.k - cfg.d1 - 1
    same_rack = [Fraction(cfg.d2)] * min(size, cfg.n1 - cfg.d1 - 1)
    other_rack = [(cfg.d2 - i) * cfg.tau for i in range(1, min(cfg.d2, max(0, cfg.k - cfg.n1)) + 1)]
    entries = _clamp(same_rack + other_rack)[:size]
    return IncomeMultiset(_pad(entries, size), "I2")


def income_I3(cfg: SystemConfig) -> IncomeMultiset:
    """Rack-2 newcomers right after the first rack-1 block: ``(d2 - i) tau``."""
    _require_k_above_d1(cfg, "I3")
    size = cfg.k - cfg.d1 - 1
    entries = _clamp((cfg.d2 - i) * cfg.tau for i in range(1, min(cfg.d2, size) + 1))
    return IncomeMultiset(_pad(entries, size), "I3")


def select_income(cfg: SystemConfig) -> IncomeMultiset:
    """Income multiset of the rack model.

    ``I1`` alone when ``k - 1 <= d1``; otherwise ``I1`` joined with whichever
    of ``I2``/``I3`` has the smaller sum, ties going to ``I3``.
    """
    first = income_I1(cfg)
    if cfg.k - 1 <= cfg.d1:
        return first
    second, third = income_I2(cfg), income_I3(cfg)
    chosen = second if second.total < third.total else third
    return first + chosen


def income_basic(cfg: SystemConfig) -> IncomeMultiset:
    """Homogeneous model, ``d - i`` in units of beta (tau ignored)."""
    return IncomeMultiset(_clamp(cfg.d - i for i in range(cfg.k)), "basic")


def income_static(cfg: SystemConfig) -> IncomeMultiset:
    """Static cheap/expensive split: rack 1 plays the fixed cheap set."""
    cheap = [(cfg.d1 - i) * cfg.tau + cfg.d2 for i in range(min(cfg.d1, cfg.k - 1) + 1)]
    rest = [Fraction(cfg.d2 - i) for i in range(1, min(cfg.d2, cfg.k - cfg.d1 - 1) + 1)]
    return IncomeMultiset(_pad(_clamp(cheap + rest), cfg.k), "static")


def income_for(cfg: SystemConfig, model: ModelKind | str) -> IncomeMultiset:
    model = ModelKind.parse(model)
    if model is ModelKind.BASIC:
        return income_basic(cfg)
    if model is ModelKind.STATIC:
        return income_static(cfg)
    return select_income(cfg)


def build_L(income: IncomeMultiset | Sequence, cfg: SystemConfig, model: ModelKind | str) -> OrderedIncomeList:
    """Sort incomes ascending.

    For the rack model every value above ``d1 tau + d2`` (the income of the
    first rack-1 newcomer) is dropped, which is what keeps ``gamma1 >= alpha``
    on the resulting curve.
    """
    model = ModelKind.parse(model)
    values = sorted(scalar(v) for v in income)
    truncated = 0
    if model is ModelKind.RACK:
        cap = cfg.gamma1_coeff
        kept = [v for v in values if v <= cap]
        truncated = len(values) - len(kept)
        values = kept
    return OrderedIncomeList(tuple(values), cfg.k, truncated)


def ordered_incomes(cfg: SystemConfig, model: ModelKind | str) -> OrderedIncomeList:
    return build_L(income_for(cfg, model), cfg, model)
