"""Scenario execution: build topology and coordinates, route node pairs,
aggregate greedy ratio and path stretch, sweep parameters, export maps.

Everything is deterministic: a ScenarioConfig (including its seed) fully
determines every output byte.  Pair evaluation is grouped by destination and
aggregated in ascending destination order, so worker count never changes the
result.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np
from scipy.sparse.csgraph import shortest_path

from routesim import distance as dist_mod
from routesim.coords import (
    AlignedCoords,
    AnchorSet,
    CoordsError,
    RULE_SELF_WEIGHTED,
    ALIGN_RULES,
    VirtualCoords,
    align,
    build_vcs,
    corner_anchors,
    geo_view,
)
from routesim.routing import (
    GEO_PROTOCOLS,
    METHOD_GG,
    METHOD_RNG,
    Mode,
    Outcome,
    PROTOCOLS,
    RoutingContext,
    bvr_route,
    gpsr_route,
    lcr_route,
)
from routesim.topology import (
    PerceivedPositions,
    Topology,
    TopologyError,
    VoidSpec,
    build_udg,
    carve_voids,
    generate_grid,
    generate_random,
    perturb_positions,
    topology_from_adjacency,
)

_PERTURB_SALT = 104729    # keeps the perception stream independent of deployment draws
_SAMPLE_SALT = 15485863   # pair-sampling stream

SWEEP_AXES = ("radio_range", "void_size", "hole_count", "align_depth", "error_fraction", "seed")

CSV_HEADER = (
    "scenario_id,protocol,coord_system,distance,align_depth,mean_degree,"
    "pairs,greedy_ratio,delivery_ratio,stretch_greedy,stretch_all,stretch_complementary"
)

# Canonical hole centers (fractions of the deployment bounds) for the
# hole-count sweep; the first five form a quincunx.
_HOLE_CENTERS = (
    (0.50, 0.50), (0.25, 0.25), (0.75, 0.75), (0.25, 0.75), (0.75, 0.25),
    (0.50, 0.25), (0.50, 0.75), (0.25, 0.50), (0.75, 0.50),
    (0.125, 0.50), (0.875, 0.50), (0.50, 0.125), (0.50, 0.875),
    (0.125, 0.125), (0.875, 0.875), (0.125, 0.875),
)


class ScenarioError(ValueError):
    """Invalid or inconsistent scenario description."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Declarative experiment description; see README for the config-file keys."""

    deployment: str = "grid"              # grid | random | abc-fixture
    rows: int = 20
    cols: int = 20
    spacing: float = 1.0
    n: int = 400
    width: float = 20.0
    height: float = 20.0
    radio_range: float = 1.2
    voids: tuple[VoidSpec, ...] = ()
    anchors: str | tuple[int, ...] = "corners"
    dims: int = 4
    align_rule: str = RULE_SELF_WEIGHTED
    align_depth: int = 0
    distance: str = "euclid"              # euclid | manhattan | semi | geo
    semi_weight: float = dist_mod.DEFAULT_SEMI_WEIGHT
    protocol: str = "gf-geo"
    loc_error: float = 0.0
    seed: int = 1
    ttl_factor: float = 4.0
    sample: int = 0                       # ordered-pair budget; 0 evaluates all pairs

    def __post_init__(self):
        if self.deployment not in ("grid", "random", "abc-fixture"):
            raise ScenarioError(f"unknown deployment kind {self.deployment!r}")
        if self.protocol not in PROTOCOLS:
            raise ScenarioError(f"unknown protocol {self.protocol!r}")
        if self.distance not in dist_mod.KINDS:
            raise ScenarioError(f"unknown distance kind {self.distance!r}")
        if self.align_rule not in ALIGN_RULES:
            raise ScenarioError(f"unknown alignment rule {self.align_rule!r}")
        if self.align_depth < 0:
            raise ScenarioError("align_depth must be >= 0")
        if not 0.0 <= self.loc_error <= 1.0:
            raise ScenarioError("loc_error must lie in [0, 1]")
        if self.ttl_factor <= 0:
            raise ScenarioError("ttl_factor must be positive")
        if self.sample < 0:
            raise ScenarioError("sample budget must be >= 0")
        if isinstance(self.anchors, str):
            if self.anchors != "corners":
                raise ScenarioError("anchors must be 'corners' or an id tuple")
            if not 3 <= self.dims <= 4:
                raise ScenarioError("corner anchors support 3 or 4 dims")

    def scenario_id(self) -> str:
        tag = hashlib.md5(repr(self).encode()).hexdigest()[:8]
        if self.deployment == "grid":
            base = f"grid{self.rows}x{self.cols}"
        elif self.deployment == "random":
            base = f"rand{self.n}"
        else:
            base = "abc"
        return f"{base}-r{self.radio_range:g}-{self.protocol}-{tag}"


def _needs_vcs(protocol: str) -> bool:
    return protocol not in GEO_PROTOCOLS


@dataclass
class Scenario:
    """A fully built scenario: topology, coordinate systems, routing context."""

    config: ScenarioConfig
    topology: Topology
    perceived: PerceivedPositions | None
    anchors: AnchorSet | None
    vc: VirtualCoords | None
    av: AlignedCoords | None
    ctx: RoutingContext
    removed_nodes: int = 0
    _hops: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def build(cls, config: ScenarioConfig) -> "Scenario":
        removed = 0
        if config.deployment == "abc-fixture":
            t, vc = fixture_abc()
            anchors: AnchorSet | None = vc.anchors
            perceived = None
        else:
            if config.deployment == "grid":
                dep = generate_grid(config.rows, config.cols, config.spacing)
            else:
                dep = generate_random(config.n, config.width, config.height, config.seed)
            before = dep.n
            dep = carve_voids(dep, list(config.voids))
            removed = before - dep.n
            t = build_udg(dep, config.radio_range)
            perceived = None
            if config.loc_error > 0:
                perceived = perturb_positions(t, config.loc_error, config.seed + _PERTURB_SALT)
            anchors = None
            vc = None
            if _needs_vcs(config.protocol):
                if isinstance(config.anchors, tuple):
                    anchors = AnchorSet(config.anchors)
                else:
                    anchors = corner_anchors(t, config.dims)
                vc = build_vcs(t, anchors)
        av = None
        if vc is not None and config.align_depth > 0:
            av = align(vc, t, config.align_depth, config.align_rule)

        sc = cls(
            config=config,
            topology=t,
            perceived=perceived,
            anchors=anchors,
            vc=vc,
            av=av,
            ctx=None,  # type: ignore[arg-type]
            removed_nodes=removed,
        )
        ttl = max(1, math.ceil(config.ttl_factor * sc.diameter()))
        sc.ctx = RoutingContext(
            topology=t,
            geo_positions=geo_view(t, perceived),
            ttl=ttl,
            vc=vc,
            av=av,
            distance_kind=config.distance if config.distance != "geo" else "euclid",
            semi_weight=config.semi_weight,
        )
        return sc

    def hop_matrix(self) -> np.ndarray:
        """All-pairs hop distances (float, inf across components); cached."""
        if self._hops is None:
            self._hops = shortest_path(
                self.topology.sparse(), method="D", directed=False, unweighted=True
            )
        return self._hops

    def diameter(self) -> int:
        h = self.hop_matrix()
        finite = h[np.isfinite(h)]
        return int(finite.max()) if len(finite) else 0

    @property
    def effective_depth(self) -> int:
        if self.config.protocol in GEO_PROTOCOLS or self.vc is None:
            return 0
        if self.config.protocol == "gf-vcs":
            return 0
        return self.av.depth if self.av is not None else 0

    @property
    def coord_system(self) -> str:
        p = self.config.protocol
        if p == "sp":
            return "none"
        if p in GEO_PROTOCOLS:
            return "geo"
        return "avcs" if self.effective_depth > 0 else "vcs"

    @property
    def distance_label(self) -> str:
        p = self.config.protocol
        if p == "sp":
            return "none"
        if p in GEO_PROTOCOLS:
            return "geo"
        if p == "bvr":
            return "semi"
        return self.config.distance if self.config.distance != "geo" else "euclid"


@dataclass(frozen=True)
class MetricsRow:
    """Aggregated outcome of one scenario evaluation."""

    scenario_id: str
    protocol: str
    coord_system: str
    distance: str
    align_depth: int
    mean_degree: float
    pairs: int
    greedy_ratio: float
    delivery_ratio: float
    stretch_greedy: float
    stretch_all: float
    stretch_complementary: float
    excluded_pairs: int = 0
    failures: tuple[tuple[str, int], ...] = ()

    def csv_row(self) -> str:
        return (
            f"{self.scenario_id},{self.protocol},{self.coord_system},{self.distance},"
            f"{self.align_depth},{self.mean_degree:.6f},{self.pairs},"
            f"{self.greedy_ratio:.6f},{self.delivery_ratio:.6f},"
            f"{self.stretch_greedy:.6f},{self.stretch_all:.6f},{self.stretch_complementary:.6f}"
        )


class _Agg:
    """Commutative per-destination accumulator (reduced in ascending dst order)."""

    __slots__ = ("evaluated", "excluded", "greedy", "delivered", "mixed",
                 "sum_greedy", "sum_all", "sum_comp", "episodes", "failures")

    def __init__(self):
        self.evaluated = 0
        self.excluded = 0
        self.greedy = 0
        self.delivered = 0
        self.mixed = 0
        self.sum_greedy = 0.0
        self.sum_all = 0.0
        self.sum_comp = 0.0
        self.episodes = 0
        self.failures: Counter = Counter()

    def merge(self, other: "_Agg") -> None:
        self.evaluated += other.evaluated
        self.excluded += other.excluded
        self.greedy += other.greedy
        self.delivered += other.delivered
        self.mixed += other.mixed
        self.sum_greedy += other.sum_greedy
        self.sum_all += other.sum_all
        self.sum_comp += other.sum_comp
        self.episodes += other.episodes
        self.failures.update(other.failures)


def _greedy_successors(sc: Scenario, dfield: np.ndarray, dst: int) -> np.ndarray:
    """Per-node greedy next hop toward dst (-1 at a local minimum).

    Neighbor ids ascend within each row, so argmin's first-occurrence rule
    matches the engines' lowest-id tie-break exactly.  Nodes adjacent to the
    destination hand the packet over directly, mirroring greedy_next_hop.
    """
    t = sc.topology
    ids, mask = t.neighbor_matrix()
    vals = np.where(mask, dfield[ids], np.inf)
    am = np.argmin(vals, axis=1)
    rows = np.arange(t.n)
    best_v = vals[rows, am]
    succ = np.where(best_v < dfield, ids[rows, am], -1)
    if t.adjacency[dst]:
        succ[np.array(t.adjacency[dst], dtype=np.int64)] = dst
    succ[dst] = dst
    return succ


def _chase(succ: np.ndarray, dst: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Memoized pointer chase: per-node (delivered?, hops to terminal)."""
    ok = np.zeros(n, dtype=bool)
    hops = np.zeros(n, dtype=np.int64)
    resolved = np.zeros(n, dtype=bool)
    ok[dst] = True
    resolved[dst] = True
    for start in range(n):
        u = start
        chain = []
        while not resolved[u]:
            chain.append(u)
            nxt = succ[u]
            if nxt < 0:
                resolved[u] = True  # local minimum: ok stays False
                chain.pop()
                break
            u = nxt
        for node in reversed(chain):
            nxt = succ[node]
            resolved[node] = True
            if resolved[nxt] and ok[nxt]:
                ok[node] = True
                hops[node] = hops[nxt] + 1
    return ok, hops


def _eval_group(sc: Scenario, dst: int, srcs: np.ndarray, sp_row: np.ndarray) -> _Agg:
    """Route every src toward one dst and accumulate metrics."""
    agg = _Agg()
    protocol = sc.config.protocol
    t = sc.topology
    ttl = sc.ctx.ttl
    reach = np.isfinite(sp_row[srcs])
    agg.excluded += int((~reach).sum())
    srcs = srcs[reach]
    agg.evaluated += len(srcs)
    if len(srcs) == 0:
        return agg

    if protocol == "sp":
        agg.greedy += len(srcs)
        agg.delivered += len(srcs)
        agg.sum_greedy += float(len(srcs))
        agg.sum_all += float(len(srcs))
        return agg

    if protocol in ("gf-geo", "gf-vcs", "gf-avcs"):
        dfield = sc.ctx.dfield(protocol, dst)
        succ = _greedy_successors(sc, dfield, dst)
        ok, hops = _chase(succ, dst, t.n)
        for src in srcs:
            if ok[src] and hops[src] <= ttl:
                stretch = hops[src] / sp_row[src]
                agg.greedy += 1
                agg.delivered += 1
                agg.sum_greedy += stretch
                agg.sum_all += stretch
            elif ok[src]:
                agg.failures["ttl-exceeded"] += 1
            else:
                agg.failures["local-minimum"] += 1
        return agg

    # Per-pair engines.
    if protocol in ("gpsr-gg", "gpsr-rng"):
        method = METHOD_GG if protocol == "gpsr-gg" else METHOD_RNG
        pg = sc.ctx.planar(method)
        pos = sc.ctx.geo_positions
        results = (gpsr_route(int(s), dst, pos, pg, t, ttl) for s in srcs)
    elif protocol == "lcr":
        dfield = sc.ctx.dfield(protocol, dst)
        results = (lcr_route(int(s), dst, dfield, t, ttl) for s in srcs)
    elif protocol == "bvr":
        dfield = sc.ctx.dfield(protocol, dst)
        results = (bvr_route(int(s), dst, dfield, sc.vc, t, ttl) for s in srcs)
    else:  # pragma: no cover
        raise ScenarioError(f"unhandled protocol {protocol}")

    hop_matrix = sc.hop_matrix()
    for src, rr in zip(srcs, results):
        if rr.delivered:
            stretch = rr.hops / sp_row[src]
            agg.delivered += 1
            agg.sum_all += stretch
            if rr.outcome == Outcome.DELIVERED_GREEDY:
                agg.greedy += 1
                agg.sum_greedy += stretch
            else:
                agg.mixed += 1
                for hops_ep, sp_ep in _episodes(rr, hop_matrix):
                    agg.episodes += 1
                    agg.sum_comp += hops_ep / sp_ep
        else:
            agg.failures[rr.failure_cause or "unreachable"] += 1
    return agg


def _episodes(rr, hop_matrix: np.ndarray):
    """Complementary episodes of a delivered route.

    An episode is a maximal run of non-greedy hops; its stretch compares the
    hops it spent against the shortest path between the nodes where it began
    and ended.  Episodes that end where they started carry no defined stretch
    and are skipped.
    """
    modes = rr.modes
    i = 0
    while i < len(modes):
        if modes[i] == Mode.GREEDY:
            i += 1
            continue
        j = i
        while j < len(modes) and modes[j] != Mode.GREEDY:
            j += 1
        entry, end = rr.path[i], rr.path[j]
        sp = hop_matrix[entry][end]
        if sp > 0 and np.isfinite(sp):
            yield (j - i), sp
        i = j


def _sampled_pairs(sc: Scenario) -> tuple[np.ndarray, np.ndarray]:
    """Ordered (src, dst) pairs to evaluate, sorted by (dst, src)."""
    n = sc.topology.n
    budget = sc.config.sample
    total = n * (n - 1)
    if budget == 0 or budget >= total:
        dsts = np.repeat(np.arange(n), n - 1)
        return _all_srcs(n), dsts
    rng = np.random.default_rng([sc.config.seed, _SAMPLE_SALT])
    ks = rng.choice(total, size=budget, replace=False)
    dsts = ks // (n - 1)
    rem = ks % (n - 1)
    srcs = rem + (rem >= dsts)
    order = np.lexsort((srcs, dsts))
    return srcs[order], dsts[order]


def _all_srcs(n: int) -> np.ndarray:
    base = np.arange(n)
    out = np.empty(n * (n - 1), dtype=np.int64)
    for d in range(n):
        out[d * (n - 1): (d + 1) * (n - 1)] = np.delete(base, d)
    return out


def evaluate(config: ScenarioConfig, workers: int = 1) -> MetricsRow:
    """Build the scenario and route every (or each sampled) ordered pair."""
    sc = Scenario.build(config)
    return evaluate_scenario(sc, workers=workers)


def evaluate_scenario(sc: Scenario, workers: int = 1) -> MetricsRow:
    srcs, dsts = _sampled_pairs(sc)
    groups: list[tuple[int, np.ndarray]] = []
    start = 0
    for i in range(1, len(dsts) + 1):
        if i == len(dsts) or dsts[i] != dsts[start]:
            groups.append((int(dsts[start]), srcs[start:i]))
            start = i

    hops = sc.hop_matrix()
    total = _Agg()
    if workers <= 1:
        for dst, group_srcs in groups:
            total.merge(_eval_group(sc, dst, group_srcs, hops[dst]))
    else:
        total = _parallel_eval(sc, groups, hops, workers)

    cfg = sc.config
    pairs = total.evaluated
    greedy_ratio = total.greedy / pairs if pairs else float("nan")
    delivery_ratio = total.delivered / pairs if pairs else float("nan")
    stretch_greedy = total.sum_greedy / total.greedy if total.greedy else float("nan")
    stretch_all = total.sum_all / total.delivered if total.delivered else float("nan")
    stretch_comp = total.sum_comp / total.episodes if total.episodes else float("nan")
    return MetricsRow(
        scenario_id=cfg.scenario_id(),
        protocol=cfg.protocol,
        coord_system=sc.coord_system,
        distance=sc.distance_label,
        align_depth=sc.effective_depth,
        mean_degree=sc.topology.mean_degree,
        pairs=pairs,
        greedy_ratio=greedy_ratio,
        delivery_ratio=delivery_ratio,
        stretch_greedy=stretch_greedy,
        stretch_all=stretch_all,
        stretch_complementary=stretch_comp,
        excluded_pairs=total.excluded,
        failures=tuple(sorted(total.failures.items())),
    )


_FORK_SCENARIO: Scenario | None = None
_FORK_HOPS: np.ndarray | None = None


def _fork_worker(args: tuple[int, np.ndarray]) -> _Agg:
    dst, group_srcs = args
    return _eval_group(_FORK_SCENARIO, dst, group_srcs, _FORK_HOPS[dst])


def _parallel_eval(sc: Scenario, groups, hops, workers: int) -> _Agg:
    """Fork-based pool; groups are reduced in ascending dst order, so the
    result is byte-identical to a serial run."""
    import multiprocessing as mp

    global _FORK_SCENARIO, _FORK_HOPS
    _FORK_SCENARIO = sc
    _FORK_HOPS = hops
    try:
        with mp.get_context("fork").Pool(processes=workers) as pool:
            partials = pool.map(_fork_worker, groups, chunksize=max(1, len(groups) // (workers * 4)))
    finally:
        _FORK_SCENARIO = None
        _FORK_HOPS = None
    total = _Agg()
    for p in partials:
        total.merge(p)
    return total


# --- sweeps ---------------------------------------------------------------


def _central_disc(config: ScenarioConfig, radius: float) -> VoidSpec:
    """Disc at the canonical deployment center (a grid-cell center for grids)."""
    if config.deployment == "grid":
        cx = (config.cols / 2 - 0.5) * config.spacing
        cy = (config.rows / 2 - 0.5) * config.spacing
    else:
        cx, cy = config.width / 2, config.height / 2
    return VoidSpec("disc", (cx, cy), radius=radius)


def _bounds(config: ScenarioConfig) -> tuple[float, float]:
    if config.deployment == "grid":
        return config.cols * config.spacing, config.rows * config.spacing
    return config.width, config.height


def _apply_axis(base: ScenarioConfig, axis: str, value) -> ScenarioConfig:
    if axis == "radio_range":
        return replace(base, radio_range=float(value))
    if axis == "void_size":
        if float(value) <= 0:
            return replace(base, voids=())
        return replace(base, voids=(_central_disc(base, float(value)),))
    if axis == "hole_count":
        k = int(value)
        if not 0 <= k <= len(_HOLE_CENTERS):
            raise ScenarioError(f"hole_count must be in [0, {len(_HOLE_CENTERS)}]")
        radius = base.voids[0].radius if base.voids else 2.0
        w, h = _bounds(base)
        voids = tuple(
            VoidSpec("disc", (fx * w, fy * h), radius=radius) for fx, fy in _HOLE_CENTERS[:k]
        )
        return replace(base, voids=voids)
    if axis == "align_depth":
        return replace(base, align_depth=int(value))
    if axis == "error_fraction":
        return replace(base, loc_error=float(value))
    if axis == "seed":
        return replace(base, seed=int(value))
    raise ScenarioError(f"unknown sweep axis {axis!r}")


def sweep(
    base: ScenarioConfig, axis: str, values: Iterable, workers: int = 1
) -> tuple[list[MetricsRow], list[tuple[object, str]]]:
    """One evaluation per axis value; seed sweeps append mean and stddev rows.

    Per-point failures are collected and returned; the sweep keeps going.
    """
    if axis not in SWEEP_AXES:
        raise ScenarioError(f"unknown sweep axis {axis!r}")
    rows: list[MetricsRow] = []
    errors: list[tuple[object, str]] = []
    for v in values:
        try:
            rows.append(evaluate(_apply_axis(base, axis, v), workers=workers))
        except (ScenarioError, CoordsError, TopologyError) as e:
            errors.append((v, str(e)))
    if axis == "seed" and rows:
        rows.extend(_seed_summary(rows))
    return rows, errors


_SUMMARY_FIELDS = (
    "mean_degree", "greedy_ratio", "delivery_ratio",
    "stretch_greedy", "stretch_all", "stretch_complementary",
)


def _nanmean(a: np.ndarray) -> float:
    a = a[~np.isnan(a)]
    return float(a.mean()) if len(a) else float("nan")


def _seed_summary(rows: list[MetricsRow]) -> list[MetricsRow]:
    out = []
    for tag, fn in (("mean", _nanmean), ("std", _nanstd)):
        vals = {f: fn(np.array([getattr(r, f) for r in rows], dtype=float)) for f in _SUMMARY_FIELDS}
        first = rows[0]
        out.append(
            MetricsRow(
                scenario_id=f"{first.scenario_id}-{tag}",
                protocol=first.protocol,
                coord_system=first.coord_system,
                distance=first.distance,
                align_depth=first.align_depth,
                pairs=sum(r.pairs for r in rows),
                **vals,
            )
        )
    return out


def _nanstd(a: np.ndarray) -> float:
    a = a[~np.isnan(a)]
    if len(a) < 2:
        return float("nan")
    return float(np.std(a, ddof=1))


# --- distance maps ---------------------------------------------------------


@dataclass(frozen=True)
class DistanceMap:
    """Per-node coordinate distance to one destination, on true positions."""

    dst: int
    positions: np.ndarray       # true positions, for plotting
    dist: np.ndarray            # coordinate distance to V(dst); dst entry is 0
    local_minima: tuple[int, ...]  # nodes (except dst) with an empty forwarding set

    def csv(self) -> str:
        lines = ["x,y,dist,is_local_min"]
        minima = set(self.local_minima)
        for i, (x, y) in enumerate(self.positions):
            lines.append(f"{x:.6f},{y:.6f},{self.dist[i]:.6f},{1 if i in minima else 0}")
        return "\n".join(lines) + "\n"


def distance_map(config: ScenarioConfig, dst: int) -> DistanceMap:
    """Field of coordinate distances toward ``dst`` plus its local minima.

    The destination's own entry is zero by definition (arrival is by node
    identity, not by coordinate equality).
    """
    sc = Scenario.build(config)
    if not 0 <= dst < sc.topology.n:
        raise ScenarioError(f"destination {dst} does not exist")
    dfield = sc.ctx.dfield(config.protocol, dst)
    succ = _greedy_successors(sc, dfield, dst)
    minima = tuple(int(u) for u in np.nonzero(succ < 0)[0] if u != dst)
    shown = dfield.copy()
    shown[dst] = 0.0
    return DistanceMap(
        dst=dst,
        positions=sc.topology.positions,
        dist=shown,
        local_minima=minima,
    )


# Reference distance-map fixture: a 20x20 four-connected grid whose raw 4D
# coordinate field toward cell (2, 8) contains forwarding voids that one
# alignment round removes.  The anchor cells were found by seeded search
# (corner anchors provably admit no such void on a void-free grid: their
# hop counts embed the grid affinely, so every node keeps a strictly closer
# neighbor).  Node 84 = cell (4, 4) is one of the raw local minima.
FIG_MAP_ANCHORS = (114, 143, 326, 348)
FIG_MAP_DST = 162          # cell (x=2, y=8)
FIG_MAP_MINIMUM = 84       # cell (x=4, y=4)


def fig_map_config(protocol: str = "gf-vcs", align_depth: int = 0) -> ScenarioConfig:
    """Scenario for the forwarding-void distance maps (20x20 grid, 4D VCS)."""
    return ScenarioConfig(
        deployment="grid",
        rows=20,
        cols=20,
        spacing=1.0,
        radio_range=1.2,
        anchors=FIG_MAP_ANCHORS,
        protocol=protocol,
        align_depth=align_depth,
        distance="euclid",
    )


# --- the three-node counterexample fixture ---------------------------------

# Virtual coordinate vectors the fixture realizes (A, B, C are neighbors in a
# chain, yet C's forwarding set toward A is empty under both the Euclidean and
# the Manhattan coordinate distance).
ABC_A, ABC_B, ABC_C = 0, 1, 2
ABC_VECTORS = {
    ABC_A: (3, 9, 7, 11),
    ABC_B: (2, 9, 8, 11),
    ABC_C: (3, 8, 8, 11),
}


def fixture_abc() -> tuple[Topology, VirtualCoords]:
    """Chain A-B-C plus filler paths realizing the counterexample vectors.

    The graph is specified combinatorially (anchor arms of exact lengths) and
    carries synthetic layered positions: no placement of these hop counts on
    a plain unit-disk deployment exists, so the topology is explicitly
    non-geometric.  Construction is self-verified against build_vcs.
    """
    edges: list[tuple[int, int]] = []
    n_nodes = 5  # A, B, C, relay above B, first anchor
    relay = 3
    anchor1 = 4
    edges += [(ABC_A, ABC_B), (ABC_B, ABC_C), (ABC_B, relay), (relay, anchor1)]

    def new_node() -> int:
        nonlocal n_nodes
        n_nodes += 1
        return n_nodes - 1

    def arm(frm: int, to: int, length: int) -> None:
        """Simple path of ``length`` edges from ``frm`` to ``to`` via fresh nodes."""
        prev = frm
        for _ in range(length - 1):
            nxt = new_node()
            edges.append((prev, nxt))
            prev = nxt
        edges.append((prev, to))

    anchor2 = new_node()
    arm(anchor2, ABC_A, 9)
    arm(anchor2, ABC_C, 8)
    anchor3 = new_node()
    arm(anchor3, ABC_A, 7)
    arm(anchor3, ABC_C, 8)
    anchor4 = new_node()
    arm(anchor4, anchor1, 9)   # B is two hops past anchor1's relay chain
    arm(anchor4, ABC_A, 11)
    arm(anchor4, ABC_C, 11)

    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for u, v in edges:
        adj[u].append(v)

    positions = _layered_positions(n_nodes, adj)
    t = topology_from_adjacency(positions, adj, radio_range=1.0)
    vc = build_vcs(t, AnchorSet((anchor1, anchor2, anchor3, anchor4)))
    for node, expected in ABC_VECTORS.items():
        got = tuple(int(x) for x in vc.matrix[node])
        if got != expected:
            raise AssertionError(f"fixture node {node}: got {got}, expected {expected}")
    return t, vc


def _layered_positions(n: int, adj: list[list[int]]) -> np.ndarray:
    """Deterministic plotting layout: x = hops from node A, y = rank in layer."""
    sym: list[set[int]] = [set() for _ in range(n)]
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            sym[u].add(v)
            sym[v].add(u)
    from collections import deque

    depth = [-1] * n
    depth[0] = 0
    q = deque([0])
    while q:
        u = q.popleft()
        for v in sorted(sym[u]):
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                q.append(v)
    counts: dict[int, int] = {}
    pos = np.zeros((n, 2))
    for u in range(n):
        d = max(depth[u], 0)
        rank = counts.get(d, 0)
        counts[d] = rank + 1
        pos[u] = (2.0 * d, 2.0 * rank)
    return pos
