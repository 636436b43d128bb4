"""
Balance verifiers, class statistics and color renamings.

A coloring is closed-neighborhood balanced (CNBC) when every ``N[v]`` holds
equally many vertices of each color, and neighborhood balanced (NBC) when
every ``N(v)`` does.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from balanced_coloring.errors import ColoringError
from balanced_coloring.models.coloring import BalanceMode, ClassStats, Coloring
from balanced_coloring.models.graph import Graph


@dataclass(frozen=True)
class BalanceVerdict:
    """Outcome of a verifier; on failure, the lowest offending vertex and its counts."""

    balanced: bool
    mode: BalanceMode
    vertex: Optional[int] = None
    counts: Optional[tuple[int, ...]] = None  # counts[i] = vertices of color i+1

    def __bool__(self) -> bool:
        return self.balanced


def _check_sizes(graph: Graph, coloring: Coloring) -> None:
    if len(coloring) != graph.vertex_count:
        raise ColoringError(
            "Coloring covers " + str(len(coloring)) + " vertices but the graph has "
            + str(graph.vertex_count)
        )


def neighborhood_counts(graph: Graph, coloring: Coloring, v: int, mode: BalanceMode) -> tuple[int, ...]:
    counts = [0] * coloring.k
    for u in graph.neighbors(v):
        counts[coloring.colors[u] - 1] += 1
    if mode is BalanceMode.CNBC:
        counts[coloring.colors[v] - 1] += 1
    return tuple(counts)


def verify(graph: Graph, coloring: Coloring, mode: BalanceMode | str = BalanceMode.CNBC) -> BalanceVerdict:
    mode = BalanceMode(mode)
    _check_sizes(graph, coloring)
    for v in graph.vertices():
        counts = neighborhood_counts(graph, coloring, v, mode)
        if min(counts) != max(counts):
            return BalanceVerdict(False, mode, v, counts)
    return BalanceVerdict(True, mode)


def verify_cnbc(graph: Graph, coloring: Coloring) -> BalanceVerdict:
    return verify(graph, coloring, BalanceMode.CNBC)


def verify_nbc(graph: Graph, coloring: Coloring) -> BalanceVerdict:
    return verify(graph, coloring, BalanceMode.NBC)


def cyclic_shift(coloring: Coloring, t: int) -> Coloring:
    """Rename color i to ((i - 1 + t) mod k) + 1; a shift by k is the identity."""
    k = coloring.k
    return Coloring(k, tuple((color - 1 + t) % k + 1 for color in coloring.colors))


def permute_colors(coloring: Coloring, permutation: Sequence[int]) -> Coloring:
    """Rename color i to ``permutation[i - 1]``; ``permutation`` must be a permutation of 1..k."""
    if sorted(permutation) != list(range(1, coloring.k + 1)):
        raise ColoringError("Not a permutation of 1.." + str(coloring.k) + ": " + str(list(permutation)))
    return Coloring(coloring.k, tuple(permutation[color - 1] for color in coloring.colors))


def class_stats(graph: Graph, coloring: Coloring) -> ClassStats:
    _check_sizes(graph, coloring)
    k = coloring.k
    cross = {(i, j): 0 for i in range(1, k + 1) for j in range(i, k + 1)}
    for u, v in graph.edges():
        a, b = coloring.colors[u], coloring.colors[v]
        cross[(min(a, b), max(a, b))] += 1
    return ClassStats(coloring.class_sizes(), cross)
