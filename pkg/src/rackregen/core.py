"""Exact scalars, system configuration and validation.

Every real-valued quantity (file size, tau, alpha, beta_e, costs) is a
:class:`fractions.Fraction`.  Floats only appear when rendering output.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields, replace
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

DECIMAL_DIGITS = 12


class ConfigError(ValueError):
    """Raised when a configuration cannot be parsed or is used while invalid."""


def scalar(value: ScalarLike) -> Fraction:
    """Coerce ``value`` into an exact rational.

    Strings may be integers or ``p/q``; decimal strings such as ``"1.2"`` are
    accepted too and converted exactly.  Floats are refused because they
    would smuggle rounding into the core.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ConfigError("empty scalar")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot build an exact scalar from {type(value).__name__}")


def fmt_exact(value: Fraction) -> str:
    """``p/q`` form, or a bare integer when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_decimal(value: Fraction, digits: int = DECIMAL_DIGITS) -> Decimal:
    """Round ``value`` to ``digits`` significant digits, half-even."""
    value = Fraction(value)
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    return ctx.divide(Decimal(value.numerator), Decimal(value.denominator))


def fmt_decimal(value: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    return format(to_decimal(value, digits), "f")


class ModelKind(enum.Enum):
    BASIC = "basic"
    STATIC = "static"
    RACK = "rack"

    @classmethod
    def parse(cls, text: "str | ModelKind") -> "ModelKind":
        if isinstance(text, ModelKind):
            return text
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ConfigError(f"unknown model {text!r} (expected one of {names})") from None


@dataclass(frozen=True)
class SystemConfig:
    """Parameters of a two-rack storage system.

    ``d1`` helpers always come from rack 1 and ``d2`` from rack 2; a helper
    is cheap (sends ``tau * beta_e``) when it shares the newcomer's rack.
    """

    M: Fraction = Fraction(1)
    n1: int = 1
    n2: int = 1
    k: int = 1
    d1: int = 0
    d2: int = 1
    tau: Fraction = Fraction(1)
    Cc: Fraction = Fraction(1)
    Ce: Fraction = Fraction(10)

    def __post_init__(self) -> None:
        for name in ("M", "tau", "Cc", "Ce"):
            object.__setattr__(self, name, scalar(getattr(self, name)))
        for name in ("n1", "n2", "k", "d1", "d2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")

    @property
    def d(self) -> int:
        return self.d1 + self.d2

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def gamma1_coeff(self) -> Fraction:
        """Repair bandwidth of a rack-1 newcomer per unit of beta_e."""
        return self.d1 * self.tau + self.d2

    @property
    def gamma2_coeff(self) -> Fraction:
        return self.d2 * self.tau + self.d1

    def with_(self, **changes) -> "SystemConfig":
        return replace(self, **changes)

    def as_dict(self) -> dict[str, str]:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = fmt_exact(value) if isinstance(value, Fraction) else str(value)
        return out


CONFIG_KEYS = tuple(f.name for f in fields(SystemConfig))
_INT_KEYS = {"n1", "n2", "k", "d1", "d2"}


def config_from_mapping(values: Mapping[str, object], base: SystemConfig | None = None) -> SystemConfig:
    """Build a config from string/int values keyed by field name."""
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    kwargs: dict[str, object] = {}
    for key, raw in values.items():
        if key in _INT_KEYS:
            try:
                kwargs[key] = int(str(raw).strip())
            except ValueError:
                raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
        else:
            kwargs[key] = scalar(raw if isinstance(raw, (int, Fraction)) else str(raw))
    return replace(base or SystemConfig(), **kwargs)


def parse_config_text(text: str, base: SystemConfig | None = None) -> SystemConfig:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return config_from_mapping(values, base)


def load_config(path: str | Path, base: SystemConfig | None = None) -> SystemConfig:
    return parse_config_text(Path(path).read_text(encoding="utf-8"), base)


def dump_config(cfg: SystemConfig) -> str:
    return "".join(f"{key} = {value}\n" for key, value in cfg.as_dict().items())


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def raise_for_violations(self) -> None:
        if self.violations:
            raise ConfigError("invalid configuration: " + "; ".join(self.violations))


def validate(cfg: SystemConfig, model: ModelKind | str = ModelKind.RACK) -> ValidationReport:
    """Check ``cfg`` against the model assumptions.

    Hard failures go to ``violations``.  The simplifying assumptions under
    which the income formulas are stated (``d2 >= k-d1-1``, ``d2 >= k-n1``)
    and the ``d2 == n2`` corner are only reported as warnings, because the
    income builders clamp around them.
    """
    model = ModelKind.parse(model)
    bad: list[str] = []
    warn: list[str] = []

    if cfg.M <= 0:
        bad.append("M > 0")
    if cfg.n1 < 1 or cfg.n2 < 1:
        bad.append("n1 >= 1 and n2 >= 1")
    if cfg.k < 1:
        bad.append("k >= 1")
    if cfg.d1 < 0 or cfg.d2 < 0:
        bad.append("d1 >= 0 and d2 >= 0")
    if cfg.k > cfg.n:
        bad.append("k <= n1 + n2")
    if cfg.k > cfg.d:
        bad.append("k <= d1 + d2")

    if model is not ModelKind.BASIC:
        if cfg.tau < 1:
            bad.append("tau >= 1")
        if not cfg.Ce > cfg.Cc:
            bad.append("Ce > Cc")
        if cfg.d1 > cfg.d2:
            bad.append("d1 <= d2")
        if cfg.d1 > cfg.n1 - 1:
            bad.append("d1 <= n1 - 1")
        if cfg.d2 > cfg.n2:
            bad.append("d2 <= n2")
        elif cfg.d2 == cfg.n2:
            warn.append("d2 == n2: a rack-2 newcomer has only n2-1 same-rack helpers; "
                        "the shortfall is drawn from rack 1")
        if cfg.k > cfg.d1 + 1:
            if cfg.d2 < cfg.k - cfg.d1 - 1:
                warn.append("d2 < k - d1 - 1: missing incomes are taken as zero")
            if cfg.d2 < cfg.k - cfg.n1:
                warn.append("d2 < k - n1: missing incomes are taken as zero")
    elif cfg.d > cfg.n - 1:
        bad.append("d1 + d2 <= n1 + n2 - 1")

    return ValidationReport(tuple(bad), tuple(warn))


def require_valid(cfg: SystemConfig, model: ModelKind | str = ModelKind.RACK) -> ValidationReport:
    report = validate(cfg, model)
    report.raise_for_violations()
    return report


def lcm_denominator(values: Iterable[Fraction]) -> int:
    from math import lcm

    out = 1
    for value in values:
        out = lcm(out, Fraction(value).denominator)
    return out
