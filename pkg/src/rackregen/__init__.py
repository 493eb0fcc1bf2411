"""Storage / repair-bandwidth tradeoffs for regenerating codes on two racks.

Exact rational arithmetic throughout.  The main entry points:

* :func:`threshold_for` / :func:`evaluate` - the storage threshold curve
* :func:`msr_point`, :func:`mbr_point`, :func:`breakpoint_points`
* :func:`select_income` and friends - newcomer income multisets
* :func:`worst_case_mincut` - flow-graph oracle over repair scenarios
"""

from .core import (
    ConfigError,
    ModelKind,
    SystemConfig,
    ValidationReport,
    fmt_decimal,
    fmt_exact,
    load_config,
    parse_config_text,
    scalar,
    to_decimal,
    validate,
)
from .flowgraph import (
    FlowGraph,
    OperatingPoint,
    Repair,
    Scenario,
    WorstCase,
    analytic_mincut,
    build_graph,
    exhaustive_worst_case,
    mincut,
    profile_worst_case,
    worst_case_mincut,
    worst_case_mincuts,
)
from .income import (
    IncomeMultiset,
    OrderedIncomeList,
    build_L,
    income_basic,
    income_for,
    income_I1,
    income_I2,
    income_I3,
    income_static,
    ordered_incomes,
    select_income,
)
from .threshold import (
    DegenerateThreshold,
    PiecewiseThreshold,
    TradeoffPoint,
    Unrecoverable,
    basic_threshold,
    breakpoint_points,
    cost_ratio_eta,
    evaluate,
    generalized_threshold,
    inverse,
    mbr_point,
    msr_point,
    point_at,
    repair_cost,
    threshold_for,
)

__version__ = "0.1.0"
