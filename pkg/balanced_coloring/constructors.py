"""
Constructions of graphs with certified balanced colorings.

Every ColoredGraph leaving this module has passed the verifier matching its
balance mode.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Optional

from balanced_coloring.coloring import verify
from balanced_coloring.errors import ColoringError, GraphError, HypothesisError
from balanced_coloring.graphs import complete_graph, hamming_graph
from balanced_coloring.models.coloring import BalanceMode, Coloring
from balanced_coloring.models.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Provenance:
    construction: str
    parameters: dict[str, Any] = field(default_factory=dict)

    def __repr__(self):
        return "<Provenance(" + self.construction + ", " + str(self.parameters) + ")>"


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    coloring: Coloring
    provenance: Provenance = field(default_factory=lambda: Provenance("input"))
    mode: BalanceMode = BalanceMode.CNBC

    def __post_init__(self):
        verdict = verify(self.graph, self.coloring, self.mode)
        assert verdict, (
            self.provenance.construction + " produced an unbalanced coloring at vertex "
            + str(verdict.vertex) + " with counts " + str(verdict.counts)
        )

    @property
    def k(self) -> int:
        return self.coloring.k

    @classmethod
    def certify(
        cls,
        graph: Graph,
        coloring: Coloring,
        mode: BalanceMode | str = BalanceMode.CNBC,
        provenance: Optional[Provenance] = None,
    ) -> "ColoredGraph":
        """Wrap user input, raising HypothesisError instead of asserting when unbalanced."""
        mode = BalanceMode(mode)
        verdict = verify(graph, coloring, mode)
        if not verdict:
            raise HypothesisError(
                "Coloring is not " + mode.value.upper() + ": vertex " + str(verdict.vertex)
                + " has color counts " + str(verdict.counts)
            )
        return cls(graph, coloring, provenance or Provenance("input"), mode)


def color_complete(n: int, k: int) -> ColoredGraph:
    """K_n with a round-robin coloring; exists if and only if k divides n."""
    if k < 2:
        raise ColoringError("k must be at least 2, got " + str(k))
    if n < 1 or n % k:
        raise ColoringError(
            "K_" + str(n) + " has a CNBC " + str(k) + "-coloring if and only if n = 0 mod k"
        )
    coloring = Coloring.from_zero_based(k, (v % k for v in range(n)))
    return ColoredGraph(complete_graph(n), coloring, Provenance("complete", {"n": n, "k": k}))


def _require_hamming_parameters(d: int, k: int) -> None:
    if k < 2:
        raise HypothesisError("H(d, k) needs k >= 2, got k=" + str(k))
    if d < 1 or d % k != 1 % k:
        raise HypothesisError(
            "H(" + str(d) + "," + str(k) + ") has a CNBC " + str(k)
            + "-coloring if and only if d = 1 mod k"
        )


def _extend_by_shifts(block: list[int], k: int) -> list[int]:
    """Color the next level up: the copy whose new coordinate is i gets the i-th cyclic shift."""
    return [(color + i) % k for i in range(k) for color in block]


def _replicate(block: list[int], k: int) -> list[int]:
    """Apply the same coloring to all k copies along the leading coordinate."""
    return block * k


def _hamming_colors(d: int, k: int) -> list[int]:
    """0-based colors of H(d, k) in vertex-id order, for d = kn + 1.

    Ids read tuples as base-k numbers with the first coordinate most
    significant, so a block with a fixed prefix is a contiguous id range and
    a level up is the concatenation of k such blocks.
    """
    if d == 1:
        # K_k; as the anchor for d = k+1 it is the block sharing the first k coordinates
        return list(range(k))
    # A copy of H(d-k, k): the last d-k coordinates vary
    colors = _hamming_colors(d - k, k)
    for _ in range(k - 1):
        colors = _extend_by_shifts(colors, k)
    return _replicate(colors, k)


def color_hamming(d: int, k: int) -> ColoredGraph:
    """H(d, k) colored by the recursive cyclic-shift construction."""
    _require_hamming_parameters(d, k)
    graph = hamming_graph(d, k)
    coloring = Coloring.from_zero_based(k, _hamming_colors(d, k))
    logger.info("Colored H(%d,%d) by cyclic shifts", d, k)
    return ColoredGraph(graph, coloring, Provenance("hamming", {"d": d, "k": k}))


def color_hamming_closed_form(d: int, k: int) -> ColoredGraph:
    """H(d, k) colored by a coordinate sum, for d = kn + 1.

    The color of ``a`` is the sum of its last ``n(k-1)+1`` coordinates mod k.
    Changing a summed coordinate to each of its k-1 other values reaches each
    of the other k-1 colors exactly once; changing one of the n unsummed
    coordinates keeps the color. So N[a] holds n(k-1)+1 vertices of every
    color: the vertex itself plus n(k-1) own-colored neighbors, and
    n(k-1)+1 flips into each other color.
    """
    _require_hamming_parameters(d, k)
    graph = hamming_graph(d, k)
    n = (d - 1) // k
    summed = n * (k - 1) + 1
    colors = [sum(label[d - summed:]) % k for label in graph.labels]
    coloring = Coloring.from_zero_based(k, colors)
    return ColoredGraph(graph, coloring, Provenance("hamming_closed_form", {"d": d, "k": k}))


def vertex_addition_3km2(colored: ColoredGraph, z: int) -> ColoredGraph:
    """Attach the (3k-2)-vertex gadget at z.

    New vertices, in id order after the host: u_1..u_k (all adjacent to z,
    u_1..u_{k-1} a clique), then v_1..v_{k-1} and v'_1..v'_{k-1} (each family
    a clique, all adjacent to u_k). Gadget color i is renamed so that color k
    lands on z's color; host colors are untouched.
    """
    if colored.mode is not BalanceMode.CNBC:
        raise HypothesisError("The vertex addition needs a CNBC-colored graph")
    graph, coloring = colored.graph, colored.coloring
    k = coloring.k
    n = graph.vertex_count
    if not 0 <= z < n:
        raise GraphError("Vertex " + str(z) + " out of range [0, " + str(n) + ")")

    # Gadget color i -> actual color; i = k maps to c(z)
    def rename(i: int) -> int:
        return (coloring[z] + i - 1) % k + 1

    u = list(range(n, n + k))
    v = list(range(n + k, n + 2 * k - 1))
    v_prime = list(range(n + 2 * k - 1, n + 3 * k - 2))

    edges = list(graph.edges())
    edges.extend((z, ui) for ui in u)
    edges.extend(itertools.combinations(u[:-1], 2))
    for family in (v, v_prime):
        edges.extend((u[-1], w) for w in family)
        edges.extend(itertools.combinations(family, 2))

    added = [rename(i) for i in range(1, k + 1)]
    added += [rename(i) for i in range(1, k)] * 2
    new_graph = Graph(n + 3 * k - 2, edges)
    new_coloring = Coloring(k, coloring.colors + tuple(added))
    parameters = {"z": z, "k": k, "base": colored.provenance.construction}
    return ColoredGraph(new_graph, new_coloring, Provenance("vertex_addition", parameters))


def iterate_vertex_addition(colored: ColoredGraph, z: int, rounds: int) -> ColoredGraph:
    """Repeat the (3k-2)-vertex addition at z; each round widens z's color deficit by 2."""
    if rounds < 0:
        raise HypothesisError("rounds must be nonnegative")
    for _ in range(rounds):
        colored = vertex_addition_3km2(colored, z)
    return colored


def build_hk(k: int) -> ColoredGraph:
    """H_k: the (3k-2)-vertex addition to a rainbow K_k at its color-k vertex."""
    if k < 2:
        raise HypothesisError("H_k needs k >= 2")
    hk = vertex_addition_3km2(color_complete(k, k), k - 1)
    return ColoredGraph(hk.graph, hk.coloring, Provenance("hk", {"k": k}))


@dataclass(frozen=True)
class Embedding:
    """A CNBC supergraph together with the induced copy of the original graph."""

    colored: ColoredGraph
    vertex_map: tuple[int, ...]  # original vertex -> supergraph vertex


def supergraph_embed(graph: Graph, k: int) -> Embedding:
    """Embed G as an induced subgraph of a CNBC k-colored graph.

    Vertex v_i^j (copy j of vertex i) gets id ``i*k + (j-1)`` and color j;
    this is G[K_k] vertex for vertex.
    """
    if k < 2:
        raise HypothesisError("k must be at least 2, got " + str(k))

    def vertex(i: int, j: int) -> int:
        return i * k + j

    edges = []
    for a, b in graph.edges():
        # Copies of G inside each layer, and every cross-layer edge over E(G)
        edges.extend((vertex(a, p), vertex(b, q)) for p in range(k) for q in range(k))
    for i in graph.vertices():
        # The copies of one vertex form a clique
        edges.extend((vertex(i, p), vertex(i, q)) for p, q in itertools.combinations(range(k), 2))

    n = graph.vertex_count
    labels = [(i, j) for i in range(n) for j in range(k)]
    supergraph = Graph(n * k, edges, labels)
    coloring = Coloring.from_zero_based(k, (j for _ in range(n) for j in range(k)))
    colored = ColoredGraph(supergraph, coloring, Provenance("supergraph", {"k": k, "order": n}))
    return Embedding(colored, tuple(vertex(i, 0) for i in range(n)))
