"""
Reduction from proper k-coloring to closed-neighborhood balanced k-coloring.

For ``k >= 3``, G maps to G' in which

* every edge ``uv`` of G keeps its edge and gains an edge clique: ``k-2``
  new vertices, pairwise adjacent and adjacent to both ``u`` and ``v``;
* every vertex ``v`` gains ``d(v)-1`` padding gadgets: a central vertex with
  two ``(k-1)``-cliques, each forming a K_k with it, and one edge from the
  central vertex to ``v``.

Vertex ids in G': the originals keep ``0..n-1``, then come edge cliques in
sorted edge order, then gadgets by host vertex (central, clique a, clique b).
G' has a CNBC k-coloring exactly when G has a proper k-coloring.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from balanced_coloring.coloring import verify_cnbc
from balanced_coloring.errors import ColoringError, ContractViolation, HypothesisError
from balanced_coloring.graphs import check_vertex_budget
from balanced_coloring.models.coloring import Coloring
from balanced_coloring.models.graph import Graph
from balanced_coloring.solver import (
    Propagation,
    SolveOptions,
    SolveStatus,
    find_proper_coloring,
    solve,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PaddingGadget:
    central: int
    clique_a: tuple[int, ...]
    clique_b: tuple[int, ...]

    def vertices(self) -> tuple[int, ...]:
        return (self.central,) + self.clique_a + self.clique_b


@dataclass(frozen=True)
class ReductionCertificate:
    """Where every part of G' came from."""

    k: int
    original_vertices: tuple[int, ...]  # vertex of G -> vertex of G'
    edge_cliques: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    padding: dict[int, tuple[PaddingGadget, ...]] = field(default_factory=dict)

    @staticmethod
    def expected_order(graph: Graph, k: int) -> int:
        return (
            graph.vertex_count
            + (k - 2) * graph.edge_count
            + (2 * k - 1) * sum(d - 1 for d in graph.degrees())
        )

    @property
    def vertex_count(self) -> int:
        return sum(len(block) for block in self.blocks())

    def blocks(self) -> list[tuple[int, ...]]:
        blocks = [self.original_vertices]
        blocks.extend(self.edge_cliques.values())
        for gadgets in self.padding.values():
            blocks.extend(gadget.vertices() for gadget in gadgets)
        return blocks

    def rainbow_cliques(self) -> list[tuple[int, ...]]:
        """The K_k's of G' that every CNBC coloring makes rainbow."""
        cliques = [(u, v) + clique for (u, v), clique in self.edge_cliques.items()]
        for gadgets in self.padding.values():
            for gadget in gadgets:
                cliques.append((gadget.central,) + gadget.clique_a)
                cliques.append((gadget.central,) + gadget.clique_b)
        return cliques

    def assert_partition(self) -> None:
        seen = [v for block in self.blocks() for v in block]
        assert sorted(seen) == list(range(len(seen))), "certificate blocks overlap or leave gaps"


def _require_reducible(graph: Graph, k: int) -> None:
    if k < 3:
        raise HypothesisError("the reduction is defined for k >= 3, got k=" + str(k))
    isolated = graph.isolated_vertices()
    if isolated:
        raise HypothesisError(
            "vertex " + str(isolated[0]) + " is isolated: it would keep |N[v]| = 1 in G' and can "
            "never be balanced, although it is trivially properly colorable. Drop isolated "
            "vertices first; that keeps yes-instances yes and no-instances no."
        )


def build_reduction(graph: Graph, k: int, vertex_budget: Optional[int] = None) -> tuple[Graph, ReductionCertificate]:
    _require_reducible(graph, k)
    order = ReductionCertificate.expected_order(graph, k)
    check_vertex_budget(order, vertex_budget, "the reduced graph")

    next_id = graph.vertex_count

    def fresh(count: int) -> tuple[int, ...]:
        nonlocal next_id
        block = tuple(range(next_id, next_id + count))
        next_id += count
        return block

    def clique(block: tuple[int, ...]) -> list[tuple[int, int]]:
        return [(a, b) for i, a in enumerate(block) for b in block[i + 1:]]

    edges = list(graph.edges())
    edge_cliques = {}
    for u, v in graph.edges():
        block = fresh(k - 2)
        edge_cliques[(u, v)] = block
        edges.extend(clique(block))
        edges.extend((w, end) for w in block for end in (u, v))

    padding = {}
    for v in graph.vertices():
        gadgets = []
        for _ in range(graph.degree(v) - 1):
            central = fresh(1)[0]
            gadget = PaddingGadget(central, fresh(k - 1), fresh(k - 1))
            for side in (gadget.clique_a, gadget.clique_b):
                edges.extend(clique((central,) + side))
            edges.append((central, v))
            gadgets.append(gadget)
        padding[v] = tuple(gadgets)

    reduced = Graph(next_id, edges)
    certificate = ReductionCertificate(k, tuple(graph.vertices()), edge_cliques, padding)
    assert reduced.vertex_count == order
    certificate.assert_partition()
    logger.info("Reduced %r with k=%d to %r", graph, k, reduced)
    return reduced, certificate


def drop_isolated(graph: Graph) -> tuple[Graph, tuple[int, ...]]:
    """G without its isolated vertices, and the kept vertices in their new order."""
    kept = tuple(v for v in graph.vertices() if graph.degree(v))
    return graph.induced_subgraph(kept), kept


def is_proper(graph: Graph, coloring: Coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in graph.edges())


def _check_certificate(graph: Graph, k: int, certificate: ReductionCertificate) -> Graph:
    reduced, expected = build_reduction(graph, k)
    if certificate != expected:
        raise ContractViolation("the certificate does not describe the reduction of this graph")
    return reduced


def lift_coloring(graph: Graph, k: int, proper: Coloring, certificate: ReductionCertificate) -> Coloring:
    """Extend a proper k-coloring of G to a CNBC k-coloring of G'.

    Edge cliques take the k-2 colors missing at their ends; a gadget's
    central vertex copies its host, and both gadget cliques take the other
    k-1 colors.
    """
    if proper.k != k or len(proper) != graph.vertex_count:
        raise ColoringError("expected a " + str(k) + "-coloring of " + str(graph.vertex_count) + " vertices")
    if not is_proper(graph, proper):
        raise HypothesisError("lift_coloring needs a proper coloring of G")
    reduced = _check_certificate(graph, k, certificate)

    colors = [0] * certificate.vertex_count
    palette = range(1, k + 1)
    for v, image in enumerate(certificate.original_vertices):
        colors[image] = proper[v]
    for (u, v), block in certificate.edge_cliques.items():
        missing = [c for c in palette if c not in (proper[u], proper[v])]
        for w, c in zip(block, missing):
            colors[w] = c
    for v, gadgets in certificate.padding.items():
        others = [c for c in palette if c != proper[v]]
        for gadget in gadgets:
            colors[gadget.central] = proper[v]
            for side in (gadget.clique_a, gadget.clique_b):
                for w, c in zip(side, others):
                    colors[w] = c

    lifted = Coloring(k, tuple(colors))
    verdict = verify_cnbc(reduced, lifted)
    assert verdict, "lifted coloring is unbalanced at vertex " + str(verdict.vertex)
    return lifted


def extract_coloring(graph: Graph, k: int, cnbc: Coloring, certificate: ReductionCertificate) -> Coloring:
    """Restrict a CNBC coloring of G' to the original vertices; the result is proper."""
    reduced = _check_certificate(graph, k, certificate)
    verdict = verify_cnbc(reduced, cnbc)
    if not verdict:
        raise ContractViolation(
            "extract_coloring needs a CNBC coloring of G'; vertex " + str(verdict.vertex) + " is unbalanced"
        )
    proper = cnbc.restrict(certificate.original_vertices)
    # Each edge's K_k block is rainbow, so its ends differ
    assert is_proper(graph, proper), "restriction of a CNBC coloring is not proper"
    return proper


@dataclass(frozen=True)
class EquivalenceReport:
    k: int
    reduced_order: int
    colorable: bool  # G has a proper k-coloring
    status: SolveStatus  # of the CNBC search on G'
    nodes: int
    extracted: Optional[Coloring] = None

    @property
    def agreement(self) -> Optional[bool]:
        """None when the search on G' timed out."""
        if self.status is SolveStatus.TIMEOUT:
            return None
        return self.colorable == (self.status is SolveStatus.SATISFIABLE)


def equivalence_check(graph: Graph, k: int, time_limit: Optional[float] = None, workers: int = 1) -> EquivalenceReport:
    """Compare proper k-colorability of G with CNBC k-colorability of G'."""
    reduced, certificate = build_reduction(graph, k)
    colorable = find_proper_coloring(graph, k) is not None
    options = SolveOptions(
        k=k,
        propagation=frozenset(Propagation),
        rainbow_cliques=tuple(certificate.rainbow_cliques()),
        time_limit=time_limit,
        workers=workers,
    )
    result = solve(reduced, options)
    extracted = None
    if result.satisfiable:
        extracted = extract_coloring(graph, k, result.coloring, certificate)
    report = EquivalenceReport(k, reduced.vertex_count, colorable, result.status, result.stats.nodes, extracted)
    logger.info("Equivalence on %r, k=%d: colorable=%s, search %s", graph, k, colorable, result.status.value)
    return report
