"""
Exact search for balanced colorings, plus the brute-force oracle.

``solve`` is a complete backtracking search over units (single vertices, or
twin classes when twin merging is on) with per-neighborhood count caps. The
other engines here are deliberately naive so they can act as oracles.
"""

import enum
import logging
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, Optional

from pydantic import BaseModel, field_validator, model_validator

from balanced_coloring.coloring import verify
from balanced_coloring.config import get_settings
from balanced_coloring.diagnostics import (
    DiagnosticsReport,
    Verdict,
    check_degree_nbc,
    preflight,
    twin_partition,
)
from balanced_coloring.errors import BudgetExceededError, SolverError
from balanced_coloring.models.coloring import BalanceMode, Coloring
from balanced_coloring.models.graph import Graph

logger = logging.getLogger(__name__)

# How many search nodes pass between two clock reads
CLOCK_INTERVAL = 256


class Propagation(str, enum.Enum):
    COUNT_BOUNDS = "count-bounds"
    TWIN_MERGE = "twin-merge"
    CLIQUE_RAINBOW = "clique-rainbow"


class VertexOrder(str, enum.Enum):
    DEGREE_DESC = "degree-desc"
    INPUT = "input"
    CUSTOM = "custom"


class SolveStatus(str, enum.Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    TIMEOUT = "timeout"


DEFAULT_PROPAGATION = frozenset({Propagation.COUNT_BOUNDS, Propagation.TWIN_MERGE})


class SolveOptions(BaseModel):
    k: int
    mode: BalanceMode = BalanceMode.CNBC
    symmetry_breaking: bool = True
    propagation: frozenset[Propagation] = DEFAULT_PROPAGATION
    time_limit: Optional[float] = None  # seconds; None searches to completion
    vertex_order: VertexOrder = VertexOrder.DEGREE_DESC
    custom_order: Optional[tuple[int, ...]] = None
    rainbow_cliques: tuple[tuple[int, ...], ...] = ()
    run_preflight: bool = True
    disabled_checks: tuple[str, ...] = ()
    workers: int = 1

    class Config:
        frozen = True

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: int) -> int:
        if v < 2:
            raise ValueError("k must be at least 2")
        return v

    @field_validator("time_limit")
    @classmethod
    def validate_time_limit(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v <= 0:
            raise ValueError("time_limit must be positive")
        return v

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, v: int) -> int:
        if v < 1:
            raise ValueError("workers must be at least 1")
        return v

    @model_validator(mode="after")
    def validate_order(self) -> "SolveOptions":
        if (self.vertex_order is VertexOrder.CUSTOM) != (self.custom_order is not None):
            raise ValueError("custom_order is given exactly when vertex_order is 'custom'")
        return self

    def uses(self, rule: Propagation) -> bool:
        return rule in self.propagation


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    coloring: Optional[Coloring] = None
    stats: SearchStats = field(default_factory=SearchStats)
    preflight: Optional[DiagnosticsReport] = None
    reason: str = ""

    @property
    def satisfiable(self) -> bool:
        return self.status is SolveStatus.SATISFIABLE


# ----------------------------------------------------------------------
# Search engine
# ----------------------------------------------------------------------

def _bits(mask: int) -> list[int]:
    return [c for c in range(mask.bit_length()) if mask >> c & 1]


def _hoods(graph: Graph, mode: BalanceMode) -> list[tuple[int, ...]]:
    if mode is BalanceMode.CNBC:
        return [graph.closed_neighborhood(v) for v in graph.vertices()]
    return [graph.neighbors(v) for v in graph.vertices()]


def _units(graph: Graph, options: SolveOptions) -> list[tuple[int, ...]]:
    """Search units in branching order."""
    if options.mode is BalanceMode.CNBC and options.uses(Propagation.TWIN_MERGE):
        units = twin_partition(graph)
    else:
        units = [(v,) for v in graph.vertices()]

    if options.vertex_order is VertexOrder.INPUT:
        return units
    if options.vertex_order is VertexOrder.DEGREE_DESC:
        return sorted(units, key=lambda unit: (-graph.degree(unit[0]), unit[0]))

    order = options.custom_order
    if sorted(order) != list(graph.vertices()):
        raise SolverError("custom_order must list every vertex exactly once")
    position = {v: i for i, v in enumerate(order)}
    return sorted(units, key=lambda unit: min(position[v] for v in unit))


def _validate_cliques(graph: Graph, options: SolveOptions) -> list[tuple[int, ...]]:
    """Registered cliques must be some member's closed neighborhood of size k."""
    if not options.uses(Propagation.CLIQUE_RAINBOW) or not options.rainbow_cliques:
        return []
    if options.mode is not BalanceMode.CNBC:
        raise SolverError("rainbow cliques are forced only for closed-neighborhood balance")
    cliques = []
    for clique in options.rainbow_cliques:
        members = set(clique)
        if len(members) != options.k or len(clique) != options.k:
            raise SolverError("registered clique " + str(clique) + " does not have k=" + str(options.k) + " distinct vertices")
        if any(not 0 <= v < graph.vertex_count for v in clique):
            raise SolverError("registered clique " + str(clique) + " has a vertex out of range")
        if not any(set(graph.closed_neighborhood(w)) == members for w in clique):
            raise SolverError(
                "registered clique " + str(clique) + " is not the closed neighborhood of any member"
            )
        cliques.append(tuple(clique))
    return cliques


class _Search:
    """Trail-based backtracking state shared by the sequential and parallel drivers."""

    def __init__(self, graph: Graph, options: SolveOptions, units: list[tuple[int, ...]],
                 cliques: list[tuple[int, ...]]):
        k = options.k
        n = graph.vertex_count
        self.k = k
        self.units = units
        self.symmetry_breaking = options.symmetry_breaking
        self.count_bounds = options.uses(Propagation.COUNT_BOUNDS)
        self.hoods = _hoods(graph, options.mode)
        self.target = [len(hood) // k for hood in self.hoods]
        self.members_of: list[list[int]] = [[] for _ in range(n)]
        for h, hood in enumerate(self.hoods):
            for v in hood:
                self.members_of[v].append(h)
        self.cliques = cliques
        self.cliques_of: list[list[int]] = [[] for _ in range(n)]
        for i, clique in enumerate(cliques):
            for v in clique:
                self.cliques_of[v].append(i)

        self.color = [-1] * n
        self.domain = [(1 << k) - 1] * n
        self.counts = [[0] * k for _ in range(n)]
        self.trail: list[tuple[bool, int, int]] = []  # (is_assignment, vertex, color or old domain)

    # -- state changes --------------------------------------------------

    def _shrink(self, v: int, c: int) -> bool:
        """Remove color c from an unassigned vertex; False if its domain empties."""
        if self.color[v] < 0 and self.domain[v] >> c & 1:
            self.trail.append((False, v, self.domain[v]))
            self.domain[v] &= ~(1 << c)
        return self.domain[v] != 0 or self.color[v] >= 0

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            is_assignment, v, value = self.trail.pop()
            if is_assignment:
                self.color[v] = -1
                for h in self.members_of[v]:
                    self.counts[h][value] -= 1
            else:
                self.domain[v] = value

    def assign(self, unit_index: int, c: int) -> bool:
        ok = True
        touched = set()
        for v in self.units[unit_index]:
            self.color[v] = c
            self.trail.append((True, v, c))
            for h in self.members_of[v]:
                self.counts[h][c] += 1
                touched.add(h)
                if self.counts[h][c] > self.target[h]:
                    ok = False
        if not ok:
            return False

        if self.count_bounds:
            for h in touched:
                if self.counts[h][c] == self.target[h]:
                    for u in self.hoods[h]:
                        if not self._shrink(u, c):
                            return False
            for h in touched:
                if not self._supported(h):
                    return False

        if self.cliques:
            return self._propagate_cliques(unit_index, c)
        return True

    def _supported(self, h: int) -> bool:
        """Every deficient color of hood h still has enough unassigned vertices able to take it."""
        counts = self.counts[h]
        for c in range(self.k):
            deficit = self.target[h] - counts[c]
            if deficit <= 0:
                continue
            support = sum(1 for u in self.hoods[h] if self.color[u] < 0 and self.domain[u] >> c & 1)
            if support < deficit:
                return False
        return True

    def _propagate_cliques(self, unit_index: int, c: int) -> bool:
        affected = set()
        for v in self.units[unit_index]:
            for i in self.cliques_of[v]:
                affected.add(i)
                for u in self.cliques[i]:
                    if u != v and self.color[u] == c:
                        return False
                    if not self._shrink(u, c):
                        return False
        for i in affected:
            # Pigeonhole: the free members need as many distinct colors as there are of them
            free = [u for u in self.cliques[i] if self.color[u] < 0]
            available = 0
            for u in free:
                available |= self.domain[u]
            if bin(available).count("1") < len(free):
                return False
        return True

    # -- queries ----------------------------------------------------------

    def candidates(self, unit_index: int, used_max: int) -> list[int]:
        mask = (1 << self.k) - 1
        for v in self.units[unit_index]:
            mask &= self.domain[v]
        colors = _bits(mask)
        if self.symmetry_breaking:
            colors = [c for c in colors if c <= used_max + 1]
        return colors

    def coloring(self) -> Coloring:
        return Coloring.from_zero_based(self.k, self.color)

    def replay(self, prefix: tuple[int, ...]) -> bool:
        for unit_index, c in enumerate(prefix):
            if not self.assign(unit_index, c):
                return False
        return True

    def run(self, prefix: tuple[int, ...], deadline: Optional[float], stats: SearchStats,
            clock=time.perf_counter) -> SolveStatus:
        """Depth-first search below ``prefix``; the state is left at the solution on success.

        ``deadline`` is read against ``clock``, which is polled every ``CLOCK_INTERVAL`` nodes.
        """
        if not self.replay(prefix):
            return SolveStatus.UNSATISFIABLE
        start = len(prefix)
        stats.max_depth = max(stats.max_depth, start)
        if start == len(self.units):
            return SolveStatus.SATISFIABLE

        used = max(prefix, default=-1)
        # Frame: [unit index, candidate colors, next position, trail mark, used_max]
        frames = [[start, self.candidates(start, used), 0, len(self.trail), used]]
        while frames:
            frame = frames[-1]
            unit_index, colors, position, mark, used = frame
            self.undo(mark)
            if position == len(colors):
                frames.pop()
                continue
            frame[2] = position + 1
            c = colors[position]

            stats.nodes += 1
            if deadline is not None and stats.nodes % CLOCK_INTERVAL == 0 and clock() > deadline:
                return SolveStatus.TIMEOUT
            if not self.assign(unit_index, c):
                continue

            depth = unit_index + 1
            stats.max_depth = max(stats.max_depth, depth)
            if depth == len(self.units):
                return SolveStatus.SATISFIABLE
            used = max(used, c)
            frames.append([depth, self.candidates(depth, used), 0, len(self.trail), used])
        return SolveStatus.UNSATISFIABLE

    def frontier(self, width: int, stats: SearchStats) -> list[tuple[int, ...]]:
        """Consistent prefixes in search order, expanded level by level until there are ``width``."""
        prefixes: list[tuple[int, ...]] = [()]
        for depth in range(len(self.units)):
            if len(prefixes) >= width:
                break
            expanded = []
            for prefix in prefixes:
                mark = len(self.trail)
                self.replay(prefix)
                for c in self.candidates(depth, max(prefix, default=-1)):
                    child_mark = len(self.trail)
                    stats.nodes += 1
                    stats.max_depth = max(stats.max_depth, depth + 1)
                    if self.assign(depth, c):
                        expanded.append(prefix + (c,))
                    self.undo(child_mark)
                self.undo(mark)
            prefixes = expanded
        return prefixes


# ----------------------------------------------------------------------
# Drivers
# ----------------------------------------------------------------------

def _precheck(graph: Graph, options: SolveOptions) -> tuple[Optional[DiagnosticsReport], str]:
    """Necessary conditions before search; a nonempty reason settles the instance as unsatisfiable."""
    report = None
    if options.run_preflight:
        if options.mode is BalanceMode.CNBC:
            report = preflight(graph, options.k, options.disabled_checks)
        else:
            report = DiagnosticsReport(options.k, (check_degree_nbc(graph, options.k),))
        if report.verdict is Verdict.DEFINITELY_NOT_CNBC:
            failure = report.failures()[0]
            return report, failure.name + ": " + failure.detail

    for v, hood in enumerate(_hoods(graph, options.mode)):
        if len(hood) % options.k:
            return report, (
                "vertex " + str(v) + " has a neighborhood of size " + str(len(hood))
                + ", not divisible by k=" + str(options.k)
            )
    return report, ""


def _search_prefix(args: tuple) -> tuple[SolveStatus, Optional[Coloring], SearchStats]:
    # The deadline is on time.time(): perf_counter readings are not comparable across processes
    graph, options, units, cliques, prefix, deadline = args
    stats = SearchStats()
    if deadline is not None and time.time() > deadline:
        return SolveStatus.TIMEOUT, None, stats
    search = _Search(graph, options, units, cliques)
    status = search.run(prefix, deadline, stats, clock=time.time)
    coloring = search.coloring() if status is SolveStatus.SATISFIABLE else None
    return status, coloring, stats


def solve(graph: Graph, options: SolveOptions) -> SolveResult:
    """Decide whether ``graph`` has a balanced ``options.k``-coloring in ``options.mode``."""
    started = time.perf_counter()
    report, reason = _precheck(graph, options)
    if reason:
        logger.info("Solve on %r settled before search: %s", graph, reason)
        stats = SearchStats(wall_time=time.perf_counter() - started)
        return SolveResult(SolveStatus.UNSATISFIABLE, stats=stats, preflight=report, reason=reason)

    units = _units(graph, options)
    cliques = _validate_cliques(graph, options)
    deadline = None if options.time_limit is None else started + options.time_limit
    search = _Search(graph, options, units, cliques)
    stats = SearchStats()

    if options.workers > 1 and len(units) > 1:
        status, coloring = _solve_parallel(graph, options, units, cliques, search, deadline, stats)
    else:
        status = search.run((), deadline, stats)
        coloring = search.coloring() if status is SolveStatus.SATISFIABLE else None

    if coloring is not None:
        verdict = verify(graph, coloring, options.mode)
        assert verdict, "solver returned an unbalanced coloring at vertex " + str(verdict.vertex)
    stats.wall_time = time.perf_counter() - started
    logger.info(
        "Solve on %r with k=%d (%s): %s after %d nodes, depth %d",
        graph, options.k, options.mode.value, status.value, stats.nodes, stats.max_depth,
    )
    return SolveResult(status, coloring, stats, report)


def _solve_parallel(graph, options, units, cliques, search, deadline, stats):
    """Split the search at a shallow frontier; the first satisfiable prefix in search order wins."""
    prefixes = search.frontier(options.workers, stats)
    logger.debug("Parallel solve over %d prefixes with %d workers", len(prefixes), options.workers)
    if not prefixes:
        return SolveStatus.UNSATISFIABLE, None
    wall_deadline = None if deadline is None else time.time() + (deadline - time.perf_counter())
    worker_args = [(graph, options, units, cliques, prefix, wall_deadline) for prefix in prefixes]
    with Pool(min(options.workers, len(worker_args))) as pool:
        results = pool.map(_search_prefix, worker_args)

    status = SolveStatus.UNSATISFIABLE
    coloring = None
    for worker_status, worker_coloring, worker_stats in results:
        stats.nodes += worker_stats.nodes
        stats.max_depth = max(stats.max_depth, worker_stats.max_depth)
        if coloring is None and worker_status is SolveStatus.SATISFIABLE:
            status, coloring = worker_status, worker_coloring
        elif coloring is None and worker_status is SolveStatus.TIMEOUT:
            status = SolveStatus.TIMEOUT
    return status, coloring


# ----------------------------------------------------------------------
# Oracles
# ----------------------------------------------------------------------

def check_enumeration_budget(vertex_count: int, k: int, budget: Optional[int] = None) -> None:
    budget = get_settings().enumeration_budget if budget is None else budget
    if k ** vertex_count > budget:
        raise BudgetExceededError(
            "enumerating " + str(k) + "^" + str(vertex_count) + " colorings exceeds the budget of " + str(budget)
        )


def brute_force(graph: Graph, k: int, mode: BalanceMode | str = BalanceMode.CNBC,
                budget: Optional[int] = None) -> list[Coloring]:
    """Every balanced k-coloring, in lexicographic order of color tuples.

    Vertices are colored 0, 1, 2, ...; a neighborhood is checked as soon as
    its highest vertex has a color.
    """
    mode = BalanceMode(mode)
    if k < 2:
        raise SolverError("k must be at least 2")
    n = graph.vertex_count
    check_enumeration_budget(n, k, budget)
    hoods = _hoods(graph, mode)
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for hood in hoods:
        if hood:
            closing[max(hood)].append(hood)

    colors = [0] * n
    found: list[Coloring] = []

    def balanced(hood: tuple[int, ...]) -> bool:
        counts = [0] * k
        for u in hood:
            counts[colors[u]] += 1
        return min(counts) == max(counts)

    def extend(v: int) -> None:
        if v == n:
            found.append(Coloring.from_zero_based(k, colors))
            return
        for c in range(k):
            colors[v] = c
            if all(balanced(hood) for hood in closing[v]):
                extend(v + 1)

    extend(0)
    return found


def find_proper_coloring(graph: Graph, k: int) -> Optional[Coloring]:
    """A proper k-coloring by backtracking over vertices in degree order, or None."""
    if k < 2:
        raise SolverError("k must be at least 2")
    order = sorted(graph.vertices(), key=lambda v: (-graph.degree(v), v))
    colors = [-1] * graph.vertex_count

    def extend(i: int, used_max: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[u] for u in graph.neighbors(v)}
        for c in range(min(k, used_max + 2)):
            if c not in taken:
                colors[v] = c
                if extend(i + 1, max(used_max, c)):
                    return True
        colors[v] = -1
        return False

    if not extend(0, -1):
        return None
    return Coloring.from_zero_based(k, colors)


# ----------------------------------------------------------------------
# Cross-validation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Disagreement:
    graph: Graph  # minimized
    original: Graph
    solver_status: SolveStatus
    oracle_count: int


@dataclass
class CrossValidationReport:
    k: int
    mode: BalanceMode
    checked: int = 0
    satisfiable: int = 0
    timeouts: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def agreed(self) -> bool:
        return not self.disagreements


def _disagree(graph: Graph, options: SolveOptions) -> Optional[tuple[SolveStatus, int]]:
    result = solve(graph, options)
    if result.status is SolveStatus.TIMEOUT:
        return None
    oracle = brute_force(graph, options.k, options.mode)
    if result.satisfiable != bool(oracle):
        return result.status, len(oracle)
    return None


def minimize_disagreement(graph: Graph, options: SolveOptions) -> Graph:
    """Greedily delete edges, then vertices, while solver and oracle still disagree."""
    changed = True
    while changed:
        changed = False
        for edge in list(graph.edges()):
            candidate = Graph(graph.vertex_count, [e for e in graph.edges() if e != edge])
            if _disagree(candidate, options):
                graph, changed = candidate, True
                break
    changed = True
    while changed and graph.vertex_count > 1:
        changed = False
        for v in graph.vertices():
            candidate = graph.induced_subgraph([u for u in graph.vertices() if u != v])
            if _disagree(candidate, options):
                graph, changed = candidate, True
                break
    return graph


def cross_validate(graphs: Iterable[Graph], k: int, mode: BalanceMode | str = BalanceMode.CNBC,
                   options: Optional[SolveOptions] = None) -> CrossValidationReport:
    """Compare ``solve`` against ``brute_force`` on every graph."""
    mode = BalanceMode(mode)
    options = options or SolveOptions(k=k, mode=mode)
    report = CrossValidationReport(k, mode)
    for graph in graphs:
        report.checked += 1
        result = solve(graph, options)
        if result.status is SolveStatus.TIMEOUT:
            report.timeouts += 1
            continue
        report.satisfiable += result.satisfiable
        oracle = brute_force(graph, k, mode)
        if result.satisfiable != bool(oracle):
            minimized = minimize_disagreement(graph, options)
            report.disagreements.append(Disagreement(minimized, graph, result.status, len(oracle)))
            logger.warning("Solver and oracle disagree on %r (minimized to %r)", graph, minimized)
    return report
