"""
Necessary conditions and counting identities for closed-neighborhood balance.

The ``check_*`` functions taking ``k`` are necessary conditions: a failure
proves that no CNBC k-coloring exists. ``check_counting`` and
``check_regular_counting`` are post-verifiers for a given CNBC coloring and
raise ContractViolation when the coloring is not balanced.

All arithmetic is exact (integers and Fractions).
"""

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Collection, Optional

from balanced_coloring.coloring import class_stats, verify_cnbc
from balanced_coloring.errors import ContractViolation, HypothesisError
from balanced_coloring.models.coloring import Coloring
from balanced_coloring.models.graph import Graph

logger = logging.getLogger(__name__)


class CheckStatus(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class Verdict(str, enum.Enum):
    DEFINITELY_NOT_CNBC = "definitely-not-cnbc"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    detail: str = ""
    witness: Optional[dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.status is not CheckStatus.FAIL

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class DiagnosticsReport:
    k: int
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> Verdict:
        if any(check.status is CheckStatus.FAIL for check in self.checks):
            return Verdict.DEFINITELY_NOT_CNBC
        return Verdict.UNKNOWN

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if check.status is CheckStatus.FAIL]

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)


def _require_k(k: int) -> None:
    if k < 2:
        raise HypothesisError("Balanced colorings need k >= 2, got k=" + str(k))


def _pass(name: str, detail: str = "") -> CheckResult:
    return CheckResult(name, CheckStatus.PASS, detail)


def _fail(name: str, detail: str, **witness: Any) -> CheckResult:
    return CheckResult(name, CheckStatus.FAIL, detail, witness or None)


# ----------------------------------------------------------------------
# Necessary conditions
# ----------------------------------------------------------------------

def check_degree_cnbc(graph: Graph, k: int) -> CheckResult:
    """Every degree must be congruent to -1 modulo k."""
    _require_k(k)
    for v in graph.vertices():
        d = graph.degree(v)
        if d % k != k - 1:
            return _fail(
                "degree_cnbc",
                "vertex " + str(v) + " has degree " + str(d) + " but degrees must be "
                + str(k - 1) + " mod " + str(k),
                vertex=v, degree=d,
            )
    return _pass("degree_cnbc", "every degree is " + str(k - 1) + " mod " + str(k))


def check_degree_nbc(graph: Graph, k: int) -> CheckResult:
    """Every degree must be a multiple of k."""
    _require_k(k)
    for v in graph.vertices():
        d = graph.degree(v)
        if d % k:
            return _fail(
                "degree_nbc",
                "vertex " + str(v) + " has degree " + str(d) + ", not a multiple of " + str(k),
                vertex=v, degree=d,
            )
    return _pass("degree_nbc", "every degree is a multiple of " + str(k))


def twin_partition(graph: Graph) -> list[tuple[int, ...]]:
    """Classes of vertices with identical open neighborhoods, ordered by least member.

    Any CNBC coloring is constant on each class.
    """
    groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for v in graph.vertices():
        groups[graph.neighbor_set(v)].append(v)
    return sorted((tuple(members) for members in groups.values()), key=lambda members: members[0])


def check_order(graph: Graph, k: int) -> CheckResult:
    """A CNBC graph without isolated vertices has at least k vertices.

    The null graph passes vacuously. Graphs with isolated vertices are already
    rejected by ``check_degree_cnbc``.
    """
    _require_k(k)
    n = graph.vertex_count
    if n == 0 or n >= k:
        return _pass("order", "order " + str(n) + " >= " + str(k) if n else "null graph")
    return _fail("order", "order " + str(n) + " is smaller than k=" + str(k), order=n)


def check_global_divisibility(graph: Graph, k: int) -> CheckResult:
    """k^2 must divide 2|E| + |V|, since that quotient counts the edges between two classes."""
    _require_k(k)
    total = 2 * graph.edge_count + graph.vertex_count
    if total % (k * k):
        return _fail(
            "global_divisibility",
            "2|E|+|V| = " + str(total) + " is not divisible by k^2 = " + str(k * k),
            total=total,
        )
    return _pass("global_divisibility", "2|E|+|V| = " + str(total) + " = " + str(k * k) + " * " + str(total // (k * k)))


def check_regular_divisibility(graph: Graph, k: int) -> CheckResult:
    """For an r-regular graph: k^2 divides |V| or r is k-1 modulo k^2."""
    _require_k(k)
    r = graph.regular_degree()
    if r is None:
        raise ContractViolation("check_regular_divisibility needs a regular graph")
    n = graph.vertex_count
    square = k * k
    if n % square == 0:
        return _pass("regular_divisibility", "|V| = " + str(n) + " is 0 mod " + str(square))
    if r % square == (k - 1) % square:
        return _pass("regular_divisibility", "r = " + str(r) + " is " + str(k - 1) + " mod " + str(square))
    return _fail(
        "regular_divisibility",
        "r = " + str(r) + " and |V| = " + str(n) + ": neither |V| = 0 nor r = k-1 mod " + str(square),
        degree=r, order=n,
    )


NECESSARY_CHECKS = ("degree_cnbc", "order", "global_divisibility", "regular_divisibility")


def preflight(graph: Graph, k: int, disabled: Collection[str] = ()) -> DiagnosticsReport:
    """Run every k-parameterized necessary check; disabled checks are reported as skipped."""
    _require_k(k)
    unknown = set(disabled) - set(NECESSARY_CHECKS)
    if unknown:
        raise HypothesisError("Unknown checks: " + ", ".join(sorted(unknown)))

    results = []
    for name in NECESSARY_CHECKS:
        if name in disabled:
            results.append(CheckResult(name, CheckStatus.SKIPPED, "disabled"))
        elif name == "degree_cnbc":
            results.append(check_degree_cnbc(graph, k))
        elif name == "order":
            results.append(check_order(graph, k))
        elif name == "global_divisibility":
            results.append(check_global_divisibility(graph, k))
        elif graph.regular_degree() is None:
            results.append(CheckResult(name, CheckStatus.SKIPPED, "graph is not regular"))
        else:
            results.append(check_regular_divisibility(graph, k))

    report = DiagnosticsReport(k, tuple(results))
    logger.debug("Preflight for %r with k=%d: %s", graph, k, report.verdict.value)
    return report


# ----------------------------------------------------------------------
# Counting identities for a given CNBC coloring
# ----------------------------------------------------------------------

def _require_cnbc(graph: Graph, coloring: Coloring, who: str) -> None:
    verdict = verify_cnbc(graph, coloring)
    if not verdict:
        raise ContractViolation(
            who + " needs a closed-neighborhood balanced coloring; vertex "
            + str(verdict.vertex) + " has color counts " + str(verdict.counts)
        )


def check_counting(graph: Graph, coloring: Coloring) -> list[CheckResult]:
    """Cross-class and intra-class edge counts of a CNBC coloring.

    |E(V_i,V_j)| = (2|E|+|V|)/k^2 for i != j and
    |E(V_i,V_i)| = (2|E|+|V|)/(2k^2) - |V_i|/2; classes of equal size have
    equally many internal edges.
    """
    _require_cnbc(graph, coloring, "check_counting")
    stats = class_stats(graph, coloring)
    k = coloring.k
    total = Fraction(2 * graph.edge_count + graph.vertex_count)
    cross_expected = total / (k * k)

    results = []
    bad_cross = [
        (i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)
        if stats.between(i, j) != cross_expected
    ]
    if bad_cross:
        i, j = bad_cross[0]
        results.append(_fail(
            "cross_edges", "|E(V_" + str(i) + ",V_" + str(j) + ")| = " + str(stats.between(i, j))
            + " but expected " + str(cross_expected), classes=[i, j],
        ))
    else:
        results.append(_pass("cross_edges", "every |E(V_i,V_j)| = " + str(cross_expected)))

    bad_intra = []
    for i in range(1, k + 1):
        expected = total / (2 * k * k) - Fraction(stats.sizes[i - 1], 2)
        if stats.intra(i) != expected:
            bad_intra.append((i, expected))
    if bad_intra:
        i, expected = bad_intra[0]
        results.append(_fail(
            "intra_edges", "|E(V_" + str(i) + ")| = " + str(stats.intra(i)) + " but expected " + str(expected),
            color=i,
        ))
    else:
        results.append(_pass("intra_edges", "every |E(V_i)| matches (2|E|+|V|)/(2k^2) - |V_i|/2"))

    mismatched = [
        (i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)
        if stats.sizes[i - 1] == stats.sizes[j - 1] and stats.intra(i) != stats.intra(j)
    ]
    if mismatched:
        i, j = mismatched[0]
        results.append(_fail("equal_classes_equal_intra", "classes " + str(i) + " and " + str(j)
                             + " have equal size but different internal edge counts", classes=[i, j]))
    else:
        results.append(_pass("equal_classes_equal_intra"))
    return results


def check_regular_counting(graph: Graph, coloring: Coloring) -> list[CheckResult]:
    """For an r-regular graph: |V_i| = |V|/k, |E(V_i,V_j)| = (r+1)|V|/k^2, |E(V_i)| = (r+1-k)|V|/(2k^2)."""
    r = graph.regular_degree()
    if r is None:
        raise ContractViolation("check_regular_counting needs a regular graph")
    _require_cnbc(graph, coloring, "check_regular_counting")
    stats = class_stats(graph, coloring)
    k = coloring.k
    n = graph.vertex_count

    size_expected = Fraction(n, k)
    cross_expected = Fraction((r + 1) * n, k * k)
    intra_expected = Fraction((r + 1 - k) * n, 2 * k * k)

    results = []
    if all(size == size_expected for size in stats.sizes):
        results.append(_pass("class_sizes", "every |V_i| = " + str(size_expected)))
    else:
        results.append(_fail("class_sizes", "sizes " + str(stats.sizes) + " but expected " + str(size_expected)))

    cross = [stats.between(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    if all(count == cross_expected for count in cross):
        results.append(_pass("regular_cross_edges", "every |E(V_i,V_j)| = " + str(cross_expected)))
    else:
        results.append(_fail("regular_cross_edges", "cross counts " + str(cross) + " but expected " + str(cross_expected)))

    intra = [stats.intra(i) for i in range(1, k + 1)]
    if all(count == intra_expected for count in intra):
        results.append(_pass("regular_intra_edges", "every |E(V_i)| = " + str(intra_expected)))
    else:
        results.append(_fail("regular_intra_edges", "intra counts " + str(intra) + " but expected " + str(intra_expected)))
    return results
