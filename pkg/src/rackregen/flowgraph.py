"""Information flow graphs, exact max-flow and worst-case mincut searches.

Node ids: originals ``0 .. n1-1`` sit in rack 1 and ``n1 .. n1+n2-1`` in
rack 2; the newcomer created by the ``j``-th repair gets id ``n1+n2+j`` and
inherits the rack of the node it replaces.

Helper rule for the two-class models: a newcomer draws ``d1`` helpers from
rack 1 and ``d2`` from rack 2.  If its own rack has fewer than its quota of
other live nodes, the shortfall is drawn from the other rack instead.
"""

from __future__ import annotations

import functools
import itertools
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from .core import ModelKind, SystemConfig, scalar
from .income import IncomeMultiset

SOURCE = "S"
COLLECTOR = "DC"
UNBOUNDED = None


class InvalidScenario(ValueError):
    pass


def rack_of(cfg: SystemConfig, node: int, repairs: Sequence["Repair"] = ()) -> int:
    if node < cfg.n1:
        return 1
    if node < cfg.n:
        return 2
    j = node - cfg.n
    if j >= len(repairs):
        raise InvalidScenario(f"node {node} does not exist")
    return repairs[j].rack


def helper_quota(cfg: SystemConfig, model: ModelKind, rack: int) -> dict[int, int] | None:
    """Helpers needed from each rack by a newcomer in ``rack``.

    ``None`` for the homogeneous model (any ``d`` live nodes).  Raises
    :class:`InvalidScenario` when the racks cannot supply enough helpers.
    """
    if model is ModelKind.BASIC:
        if cfg.d > cfg.n - 1:
            raise InvalidScenario("not enough nodes for d helpers")
        return None
    sizes = {1: cfg.n1, 2: cfg.n2}
    want = {1: cfg.d1, 2: cfg.d2}
    other = 3 - rack
    own = min(want[rack], sizes[rack] - 1)
    quota = {rack: own, other: want[other] + want[rack] - own}
    if quota[other] > sizes[other]:
        raise InvalidScenario(f"a rack-{rack} newcomer cannot find {quota[other]} helpers in rack {other}")
    return quota


def _cheap(model: ModelKind, helper_rack: int, newcomer_rack: int) -> bool:
    if model is ModelKind.RACK:
        return helper_rack == newcomer_rack
    if model is ModelKind.STATIC:
        return helper_rack == 1
    return False


@dataclass(frozen=True)
class Repair:
    failed: int
    rack: int
    helpers: tuple[int, ...]

    def to_json(self) -> dict:
        return {"failed": self.failed, "newcomer_rack": self.rack, "helpers": list(self.helpers)}


@dataclass(frozen=True)
class Scenario:
    n1: int
    n2: int
    repairs: tuple[Repair, ...] = ()
    dc: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def racks(self) -> list[int]:
        return [1] * self.n1 + [2] * self.n2 + [r.rack for r in self.repairs]

    def live(self) -> list[int]:
        alive = set(range(self.n))
        for j, rep in enumerate(self.repairs):
            alive.discard(rep.failed)
            alive.add(self.n + j)
        return sorted(alive)

    def to_json(self) -> dict:
        return {
            "initial_nodes": [{"id": i, "rack": 1 if i < self.n1 else 2} for i in range(self.n)],
            "repairs": [r.to_json() for r in self.repairs],
            "dc_attachment": list(self.dc),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "Scenario":
        if isinstance(data, str):
            data = json.loads(data)
        racks = [node["rack"] for node in sorted(data["initial_nodes"], key=lambda node: node["id"])]
        n1 = racks.count(1)
        if racks != [1] * n1 + [2] * (len(racks) - n1):
            raise InvalidScenario("initial nodes must list rack 1 before rack 2")
        repairs = tuple(
            Repair(int(r["failed"]), int(r["newcomer_rack"]), tuple(int(h) for h in r["helpers"]))
            for r in data["repairs"]
        )
        return cls(n1, len(racks) - n1, repairs, tuple(int(x) for x in data["dc_attachment"]))


def check_scenario(cfg: SystemConfig, scenario: Scenario, model: ModelKind | str = ModelKind.RACK) -> None:
    """Raise :class:`InvalidScenario` unless every repair and the DC are legal."""
    model = ModelKind.parse(model)
    if (scenario.n1, scenario.n2) != (cfg.n1, cfg.n2):
        raise InvalidScenario("scenario rack sizes differ from the configuration")
    racks = [1] * cfg.n1 + [2] * cfg.n2
    alive = set(range(cfg.n))
    for j, rep in enumerate(scenario.repairs):
        if rep.failed not in alive:
            raise InvalidScenario(f"repair {j}: failed node {rep.failed} is not live")
        if rep.rack != racks[rep.failed]:
            raise InvalidScenario(f"repair {j}: newcomer must join rack {racks[rep.failed]}")
        helpers = set(rep.helpers)
        if len(helpers) != len(rep.helpers):
            raise InvalidScenario(f"repair {j}: repeated helper")
        if rep.failed in helpers or not helpers <= alive:
            raise InvalidScenario(f"repair {j}: helpers must be live and distinct from the failed node")
        quota = helper_quota(cfg, model, rep.rack)
        if quota is None:
            if len(helpers) != cfg.d:
                raise InvalidScenario(f"repair {j}: expected {cfg.d} helpers, got {len(helpers)}")
        else:
            for r, need in quota.items():
                got = sum(1 for h in helpers if racks[h] == r)
                if got != need:
                    raise InvalidScenario(f"repair {j}: expected {need} helpers from rack {r}, got {got}")
        alive.discard(rep.failed)
        alive.add(cfg.n + j)
        racks.append(rep.rack)
    dc = set(scenario.dc)
    if len(dc) != cfg.k or len(scenario.dc) != cfg.k:
        raise InvalidScenario(f"data collector must attach to {cfg.k} distinct nodes")
    if not dc <= alive:
        raise InvalidScenario("data collector attached to a node that is no longer live")


@dataclass(frozen=True)
class FlowGraph:
    vertices: tuple
    arcs: tuple  # (tail, head, capacity or UNBOUNDED)

    def capacity_map(self) -> dict:
        out: dict = {}
        for u, v, c in self.arcs:
            out[(u, v)] = c
        return out


def build_graph(cfg: SystemConfig, scenario: Scenario, alpha, beta_e,
                model: ModelKind | str = ModelKind.RACK, check: bool = True) -> FlowGraph:
    """Information flow graph of ``scenario`` with the model's arc capacities."""
    model = ModelKind.parse(model)
    if check:
        check_scenario(cfg, scenario, model)
    alpha, beta_e = scalar(alpha), scalar(beta_e)
    cheap = cfg.tau * beta_e
    racks = scenario.racks()
    total = len(racks)
    vertices = [SOURCE] + [(side, i) for i in range(total) for side in ("in", "out")] + [COLLECTOR]
    arcs = []
    for i in range(cfg.n):
        arcs.append((SOURCE, ("in", i), UNBOUNDED))
    for i in range(total):
        arcs.append((("in", i), ("out", i), alpha))
    for j, rep in enumerate(scenario.repairs):
        node = cfg.n + j
        for h in rep.helpers:
            weight = cheap if _cheap(model, racks[h], rep.rack) else beta_e
            arcs.append((("out", h), ("in", node), weight))
    for x in scenario.dc:
        arcs.append((("out", x), COLLECTOR, UNBOUNDED))
    return FlowGraph(tuple(vertices), tuple(arcs))


def _max_flow_int(n: int, arcs: Iterable[tuple[int, int, int]], s: int, t: int) -> int:
    """Edmonds-Karp on integer capacities."""
    cap: list[dict[int, int]] = [dict() for _ in range(n)]
    for u, v, c in arcs:
        cap[u][v] = cap[u].get(v, 0) + c
        cap[v].setdefault(u, 0)
    flow = 0
    while True:
        parent = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        push = None
        v = t
        while v != s:
            u = parent[v]
            push = cap[u][v] if push is None else min(push, cap[u][v])
            v = u
        v = t
        while v != s:
            u = parent[v]
            cap[u][v] -= push
            cap[v][u] += push
            v = u
        flow += push


def max_flow(vertices: Sequence, arcs: Sequence[tuple], source, sink) -> Fraction:
    """Exact max-flow value; ``UNBOUNDED`` arcs get a sentinel above all finite capacity."""
    index = {v: i for i, v in enumerate(vertices)}
    finite = [scalar(c) for _, _, c in arcs if c is not UNBOUNDED]
    if any(c < 0 for c in finite):
        raise ValueError("negative capacity")
    sentinel = 1 + sum(finite, Fraction(0))
    caps = [sentinel if c is UNBOUNDED else scalar(c) for _, _, c in arcs]
    scale = 1
    for c in caps:
        scale = lcm(scale, c.denominator)
    int_arcs = [(index[u], index[v], int(c * scale)) for (u, v, _), c in zip(arcs, caps)]
    value = _max_flow_int(len(vertices), int_arcs, index[source], index[sink])
    return Fraction(value, scale)


def mincut(graph: FlowGraph) -> Fraction:
    return max_flow(graph.vertices, graph.arcs, SOURCE, COLLECTOR)


def analytic_mincut(income: IncomeMultiset | Iterable, alpha, beta_e) -> Fraction:
    """``sum(min(c * beta_e, alpha))`` over the income coefficients."""
    alpha, beta_e = scalar(alpha), scalar(beta_e)
    return sum((min(scalar(c) * beta_e, alpha) for c in income), Fraction(0))


# --------------------------------------------------------------------------
# exhaustive search


@dataclass(frozen=True)
class OperatingPoint:
    tau: Fraction
    alpha: Fraction
    beta_e: Fraction


@dataclass
class WorstCase:
    value: Fraction | None
    scenario: Scenario | None
    exhausted: bool = False


@dataclass
class SearchStats:
    states: int = 0
    attachments: int = 0
    flows: int = 0
    exhausted: bool = False


class _Search:
    """Depth-first walk over repair sequences, deduplicated up to relabelling
    of original nodes, evaluating every data-collector attachment that keeps
    all newcomers relevant.

    Two pruning rules keep the walk small and do not change the minimum:
    a scenario containing a newcomer that is not an ancestor of any
    attached node has the same cut as the shorter scenario that skips that
    repair, so such attachments are skipped; and failing a newcomer that has
    no children creates exactly such a newcomer, so that branch is cut.
    """

    def __init__(self, cfg: SystemConfig, model: ModelKind, points: Sequence[OperatingPoint],
                 max_repairs: int, max_states: int | None, progress: Callable[[SearchStats], None] | None):
        self.cfg = cfg
        self.model = model
        self.points = list(points)
        self.max_repairs = max_repairs
        self.max_states = max_states
        self.progress = progress
        self.n0 = cfg.n
        self.best: list[Fraction | None] = [None] * len(self.points)
        self.witness: list[Scenario | None] = [None] * len(self.points)
        self.stats = SearchStats()
        self.seen: set = set()
        self.flow_cache: dict = {}
        self.quota = {}
        for r in (1, 2):
            try:
                self.quota[r] = helper_quota(cfg, model, r)
            except InvalidScenario:
                self.quota[r] = False
        # integer arc weights per point: (alpha, cheap, expensive) on a common scale
        self.scaled = []
        for p in self.points:
            cheap = p.tau * p.beta_e
            scale = lcm(p.alpha.denominator, cheap.denominator, p.beta_e.denominator)
            self.scaled.append((scale, int(p.alpha * scale), int(cheap * scale), int(p.beta_e * scale)))

    # state: racks list, helpers list (None for originals), children list of sets, alive list of bool

    def key(self, racks, helpers, children, alive):
        n0 = self.n0
        originals = sorted((racks[i], alive[i], tuple(sorted(children[i]))) for i in range(n0))
        newcomers = tuple(
            (racks[i], alive[i], tuple(sorted(h for h in helpers[i] if h >= n0)))
            for i in range(n0, len(racks))
        )
        return newcomers, tuple(originals)

    def run(self) -> None:
        n0 = self.n0
        racks = [1] * self.cfg.n1 + [2] * self.cfg.n2
        helpers: list = [None] * n0
        children: list = [set() for _ in range(n0)]
        alive = [True] * n0
        self._visit(racks, helpers, children, alive, [])

    def _visit(self, racks, helpers, children, alive, repairs) -> None:
        if self.stats.exhausted:
            return
        key = self.key(racks, helpers, children, alive)
        if key in self.seen:
            return
        self.seen.add(key)
        self.stats.states += 1
        if self.max_states is not None and self.stats.states > self.max_states:
            self.stats.exhausted = True
            return
        if self.progress and self.stats.states % 5000 == 0:
            self.progress(self.stats)
        self._evaluate(racks, helpers, children, alive, repairs)
        if len(repairs) >= self.max_repairs:
            return
        live = [i for i in range(len(racks)) if alive[i]]
        node = len(racks)
        for failed in live:
            if failed >= self.n0 and not children[failed]:
                continue
            rack = racks[failed]
            quota = self.quota[rack]
            if quota is False:
                continue
            pool = [h for h in live if h != failed]
            for chosen in self._helper_sets(pool, racks, quota):
                racks.append(rack)
                helpers.append(chosen)
                children.append(set())
                alive.append(True)
                alive[failed] = False
                for h in chosen:
                    children[h].add(node)
                repairs.append(Repair(failed, rack, chosen))
                self._visit(racks, helpers, children, alive, repairs)
                repairs.pop()
                for h in chosen:
                    children[h].discard(node)
                alive[failed] = True
                racks.pop()
                helpers.pop()
                children.pop()
                alive.pop()

    def _helper_sets(self, pool, racks, quota):
        if quota is None:
            yield from itertools.combinations(pool, self.cfg.d)
            return
        by_rack = {1: [h for h in pool if racks[h] == 1], 2: [h for h in pool if racks[h] == 2]}
        if any(len(by_rack[r]) < quota[r] for r in (1, 2)):
            return
        for a in itertools.combinations(by_rack[1], quota[1]):
            for b in itertools.combinations(by_rack[2], quota[2]):
                yield tuple(sorted(a + b))

    def _evaluate(self, racks, helpers, children, alive, repairs) -> None:
        total = len(racks)
        n0 = self.n0
        live = [i for i in range(total) if alive[i]]
        newcomers = range(n0, total)
        # live newcomers without children must be attached
        forced = [i for i in newcomers if alive[i] and not children[i]]
        if len(forced) > self.cfg.k:
            return
        optional = [i for i in live if i not in forced]
        for extra in itertools.combinations(optional, self.cfg.k - len(forced)):
            dc = tuple(sorted(forced + list(extra)))
            ancestors = set(dc)
            stack = list(dc)
            while stack:
                x = stack.pop()
                if helpers[x] is not None:
                    for h in helpers[x]:
                        if h not in ancestors:
                            ancestors.add(h)
                            stack.append(h)
            if any(i not in ancestors for i in newcomers):
                continue
            self.stats.attachments += 1
            values = self._flows(racks, helpers, ancestors, dc)
            for p, value in enumerate(values):
                if self.best[p] is None or value < self.best[p]:
                    self.best[p] = value
                    self.witness[p] = Scenario(self.cfg.n1, self.cfg.n2, tuple(repairs), dc)

    def _flows(self, racks, helpers, ancestors, dc) -> list[Fraction]:
        n0 = self.n0
        nodes = sorted(ancestors)
        dc = set(dc)
        # ancestor subgraph up to relabelling of originals
        cache_key = (
            tuple(sorted(
                (racks[i], i in dc, tuple(sorted(j for j in nodes if j >= n0 and i in helpers[j])))
                for i in nodes if i < n0
            )),
            tuple((i, racks[i], i in dc, tuple(h for h in helpers[i] if h >= n0)) for i in nodes if i >= n0),
        )
        cached = self.flow_cache.get(cache_key)
        if cached is not None:
            return cached
        pos = {v: p for p, v in enumerate(nodes)}
        source, sink = 0, 2 * len(nodes) + 1
        out = []
        for scale, a, cheap, exp in self.scaled:
            arcs = []
            finite = 0
            for v in nodes:
                vin, vout = 1 + 2 * pos[v], 2 + 2 * pos[v]
                arcs.append((vin, vout, a))
                finite += a
                if helpers[v] is not None:
                    for h in helpers[v]:
                        w = cheap if _cheap(self.model, racks[h], racks[v]) else exp
                        arcs.append((2 + 2 * pos[h], vin, w))
                        finite += w
            inf = finite + 1
            for v in nodes:
                if v < n0:
                    arcs.append((source, 1 + 2 * pos[v], inf))
                if v in dc:
                    arcs.append((2 + 2 * pos[v], sink, inf))
            self.stats.flows += 1
            out.append(Fraction(_max_flow_int(sink + 1, arcs, source, sink), scale))
        self.flow_cache[cache_key] = out
        return out


def exhaustive_worst_case(cfg: SystemConfig, points: Sequence[OperatingPoint],
                          model: ModelKind | str = ModelKind.RACK, max_repairs: int | None = None,
                          max_states: int | None = None,
                          progress: Callable[[SearchStats], None] | None = None) -> tuple[list[WorstCase], SearchStats]:
    """Minimum max-flow over every scenario with at most ``max_repairs``
    repairs (default ``k``), for each operating point.

    Slow: every repair history and attachment is built and flowed.  Meant
    for small systems and for checking :func:`profile_worst_case`.
    """
    model = ModelKind.parse(model)
    points = [OperatingPoint(scalar(p.tau), scalar(p.alpha), scalar(p.beta_e)) for p in points]
    search = _Search(cfg, model, points, cfg.k if max_repairs is None else max_repairs, max_states, progress)
    search.run()
    results = [WorstCase(v, w, search.stats.exhausted) for v, w in zip(search.best, search.witness)]
    return results, search.stats


# A cut puts a set U of storage nodes on the collector's side.  Its value is
# sum over U of alpha for originals and min(alpha, capacity from helpers
# outside U) for newcomers.  Which particular nodes lie outside U never
# matters, only how many are live in each rack, so the search below tracks
# live U-nodes per rack plus the (cheap, expensive) outside-helper counts of
# every U newcomer.  A repair always takes as many helpers from U as the
# quota allows, which is never worse.

_ORIGINAL = ("o",)


def _profile_value(profile, point: OperatingPoint) -> Fraction:
    cheap = point.tau * point.beta_e
    total = Fraction(0)
    for item in profile:
        if item == _ORIGINAL:
            total += point.alpha
        else:
            total += min(point.alpha, item[1] * cheap + item[2] * point.beta_e)
    return total


def _compress(profile) -> tuple:
    """``(originals, ((cheap, expensive, multiplicity), ...))`` for fast evaluation."""
    counts: dict = {}
    for item in profile:
        counts[item] = counts.get(item, 0) + 1
    originals = counts.pop(_ORIGINAL, 0)
    return originals, tuple((c, e, m) for (_, c, e), m in sorted(counts.items()))


def _scaled_minimum(compressed: Sequence[tuple], point: OperatingPoint) -> tuple[int, int]:
    """Index and value (times a common denominator) of the cheapest profile."""
    cheap = point.tau * point.beta_e
    scale = lcm(point.alpha.denominator, cheap.denominator, point.beta_e.denominator)
    a = int(point.alpha * scale)
    c = int(cheap * scale)
    e = int(point.beta_e * scale)
    best, best_i = None, -1
    for i, (originals, items) in enumerate(compressed):
        value = originals * a
        for nc, ne, m in items:
            value += m * min(a, nc * c + ne * e)
        if best is None or value < best:
            best, best_i = value, i
    return best_i, scale


def _repair_profile(cfg: SystemConfig, model: ModelKind, rack: int, available: dict[int, int]):
    """Outside-helper counts of a newcomer in ``rack`` given live U-helpers per rack."""
    quota = helper_quota(cfg, model, rack)
    if quota is None:
        outside = cfg.d - min(cfg.d, available[1] + available[2])
        return ("n", 0, outside)
    outside = {s: quota[s] - min(quota[s], available[s]) for s in (1, 2)}
    cheap_rack = rack if model is ModelKind.RACK else 1
    if model is ModelKind.RACK or model is ModelKind.STATIC:
        return ("n", outside[cheap_rack], outside[3 - cheap_rack])
    raise AssertionError(model)


def _profile_states(cfg: SystemConfig, model: ModelKind, max_repairs: int):
    """All reachable (live U per rack, profile) states with one action path each."""
    # only the node and helper counts shape the state space
    return _profile_states_cached(cfg.n1, cfg.n2, cfg.k, cfg.d1, cfg.d2, model, max_repairs)


@functools.lru_cache(maxsize=64)
def _profile_states_cached(n1: int, n2: int, k: int, d1: int, d2: int, model: ModelKind, max_repairs: int):
    cfg = SystemConfig(n1=n1, n2=n2, k=k, d1=d1, d2=d2)
    racks_ok = {}
    for r in (1, 2):
        try:
            helper_quota(cfg, model, r)
            racks_ok[r] = True
        except InvalidScenario:
            racks_ok[r] = False
    sizes = {1: cfg.n1, 2: cfg.n2}
    frontier = {}
    for o1 in range(cfg.n1 + 1):
        for o2 in range(cfg.n2 + 1):
            frontier[((o1, o2), (_ORIGINAL,) * (o1 + o2))] = ((o1, o2), ())
    seen = dict(frontier)
    for _ in range(max_repairs):
        nxt = {}
        for (live, profile), (origins, path) in frontier.items():
            for rack in (1, 2):
                if not racks_ok[rack]:
                    continue
                idx = rack - 1
                for fail_u in (False, True):
                    if fail_u and live[idx] == 0:
                        continue
                    if not fail_u and live[idx] == sizes[rack]:
                        continue
                    after = list(live)
                    if fail_u:
                        after[idx] -= 1
                    available = {1: after[0], 2: after[1]}
                    item = _repair_profile(cfg, model, rack, available)
                    for join in (True, False):
                        if not join and not fail_u:
                            continue  # replacing an outside node by an outside node changes nothing
                        new_live = list(after)
                        new_profile = profile
                        if join:
                            new_live[idx] += 1
                            new_profile = tuple(sorted(profile + (item,)))
                        state = (tuple(new_live), new_profile)
                        if state in seen:
                            continue
                        entry = (origins, path + ((rack, fail_u, join),))
                        seen[state] = entry
                        nxt[state] = entry
        frontier = nxt
        if not frontier:
            break
    return seen


def _materialize(cfg: SystemConfig, model: ModelKind, origins, path) -> Scenario:
    """Concrete scenario for an action path of the profile search."""
    inside = {1: list(range(origins[0])), 2: list(range(cfg.n1, cfg.n1 + origins[1]))}
    outside = {1: list(range(origins[0], cfg.n1)), 2: list(range(cfg.n1 + origins[1], cfg.n))}
    repairs = []
    node = cfg.n
    for rack, fail_u, join in path:
        failed = inside[rack].pop() if fail_u else outside[rack].pop()
        quota = helper_quota(cfg, model, rack)
        if quota is None:
            pool_in = inside[1] + inside[2]
            pool_out = outside[1] + outside[2]
            take = pool_in[:cfg.d]
            helpers = take + pool_out[:cfg.d - len(take)]
        else:
            helpers = []
            for s in (1, 2):
                take = inside[s][:quota[s]]
                helpers += take + outside[s][:quota[s] - len(take)]
        repairs.append(Repair(failed, rack, tuple(sorted(helpers))))
        (inside if join else outside)[rack].append(node)
        node += 1
    live_inside = sorted(inside[1] + inside[2])
    return Scenario(cfg.n1, cfg.n2, tuple(repairs), tuple(live_inside[:cfg.k]))


def profile_worst_case(cfg: SystemConfig, points: Sequence[OperatingPoint],
                       model: ModelKind | str = ModelKind.RACK,
                       max_repairs: int | None = None) -> list[WorstCase]:
    """Worst-case mincut per point via the cut-profile search.

    Each minimum is confirmed by building the witness scenario and running
    exact max-flow on it; the returned value is that max-flow.
    """
    model = ModelKind.parse(model)
    points = [OperatingPoint(scalar(p.tau), scalar(p.alpha), scalar(p.beta_e)) for p in points]
    states = _profile_states(cfg, model, cfg.k if max_repairs is None else max_repairs)
    finals: dict = {}
    for (live, profile), entry in states.items():
        if sum(live) >= cfg.k:
            finals.setdefault(_compress(profile), (profile, entry))
    compressed = list(finals)
    results = []
    for point in points:
        if not compressed:
            results.append(WorstCase(None, None))
            continue
        i, _ = _scaled_minimum(compressed, point)
        profile, best_entry = finals[compressed[i]]
        best_value = _profile_value(profile, point)
        scenario = _materialize(cfg, model, *best_entry)
        graph = build_graph(cfg.with_(tau=point.tau), scenario, point.alpha, point.beta_e, model)
        flow = mincut(graph)
        if flow != best_value:
            raise RuntimeError(f"witness max-flow {flow} disagrees with cut profile {best_value}")
        results.append(WorstCase(flow, scenario))
    return results


def worst_case_mincuts(cfg: SystemConfig, points: Sequence[OperatingPoint],
                       model: ModelKind | str = ModelKind.RACK, budget: int | None = None,
                       max_repairs: int | None = None, exhaustive: bool = False,
                       progress: Callable[[SearchStats], None] | None = None) -> list[WorstCase]:
    if exhaustive:
        results, _ = exhaustive_worst_case(cfg, points, model, max_repairs, budget, progress)
        return results
    return profile_worst_case(cfg, points, model, max_repairs)


def worst_case_mincut(cfg: SystemConfig, alpha, beta_e, model: ModelKind | str = ModelKind.RACK,
                      budget: int | None = None, max_repairs: int | None = None,
                      exhaustive: bool = False) -> WorstCase:
    """Smallest mincut(S, DC) that any history of at most ``max_repairs``
    repairs (default ``k``) and any attachment of the collector can force.

    ``budget`` caps the states visited by the exhaustive walk; when it runs
    out the best value so far comes back with ``exhausted`` set.
    """
    point = OperatingPoint(cfg.tau, scalar(alpha), scalar(beta_e))
    (result,) = worst_case_mincuts(cfg, [point], model, budget, max_repairs, exhaustive)
    return result
