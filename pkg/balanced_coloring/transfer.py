"""
Coloring transfers through graph operations.

Each transfer checks its hypotheses, builds the derived graph and colors it;
the result is re-verified on the way out through ColoredGraph.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional

from balanced_coloring.coloring import BalanceVerdict, verify_cnbc, verify_nbc
from balanced_coloring.constructors import ColoredGraph, Provenance, build_hk, color_complete
from balanced_coloring.diagnostics import CheckResult, check_degree_cnbc
from balanced_coloring.errors import HypothesisError
from balanced_coloring.graphs import complement, complete_graph
from balanced_coloring.models.coloring import BalanceMode, Coloring
from balanced_coloring.models.graph import Graph, VertexPairIndex
from balanced_coloring.products import ProductKind, build_product

logger = logging.getLogger(__name__)


class TransferKind(str, enum.Enum):
    REDUCE_COLORS = "reduce_colors"
    COMPLEMENT = "complement"
    STRONG = "strong"
    CARTESIAN_K2 = "cartesian_k2"
    CARTESIAN_MIXED = "cartesian_mixed"
    LEXICOGRAPHIC = "lexicographic"
    LEXICOGRAPHIC_NBC = "lexicographic_nbc"
    LEXICOGRAPHIC_BY_DUALITY = "lexicographic_by_duality"
    JOIN = "join"
    DIRECT_K2 = "direct_k2"


# ----------------------------------------------------------------------
# Hypothesis gates
# ----------------------------------------------------------------------

def _require_mode(colored: ColoredGraph, mode: BalanceMode, who: str) -> None:
    if colored.mode is not mode:
        raise HypothesisError(
            who + " needs a " + mode.value.upper() + " coloring, got " + colored.mode.value.upper()
        )


def _require_equitable(colored: ColoredGraph, who: str) -> None:
    if not colored.coloring.is_equitable():
        raise HypothesisError(
            who + " needs equal color classes |V_1| = ... = |V_k|, got sizes "
            + str(colored.coloring.class_sizes())
        )


def _require_same_k(first: ColoredGraph, second: ColoredGraph, who: str) -> None:
    if first.k != second.k:
        raise HypothesisError(
            who + " needs both colorings to use the same k, got " + str(first.k) + " and " + str(second.k)
        )


def _projection(k: int, index: VertexPairIndex, colors: tuple[int, ...], side: int) -> Coloring:
    return Coloring(k, tuple(colors[pair[side]] for pair in index.pairs()))


# ----------------------------------------------------------------------
# Transfers
# ----------------------------------------------------------------------

def reduce_colors(graph: Graph, coloring: Coloring, p: int) -> Coloring:
    """Merge a CNBC k-coloring into p colors, p dividing k: color i becomes ((i-1) mod p) + 1."""
    if p < 2 or coloring.k % p:
        raise HypothesisError(
            "reduce_colors needs p >= 2 dividing k=" + str(coloring.k) + ", got p=" + str(p)
        )
    verdict = verify_cnbc(graph, coloring)
    if not verdict:
        raise HypothesisError("reduce_colors needs a CNBC coloring; vertex " + str(verdict.vertex) + " is unbalanced")
    reduced = Coloring(p, tuple((color - 1) % p + 1 for color in coloring.colors))
    assert verify_cnbc(graph, reduced), "merging color classes broke balance"
    return reduced


@dataclass(frozen=True)
class ComplementResult:
    """Both sides of the complement biconditional for an equitable coloring."""

    graph: Graph
    complement: Graph
    coloring: Coloring
    nbc_verdict: BalanceVerdict  # of the coloring on the graph
    cnbc_verdict: BalanceVerdict  # of the coloring on the complement

    @property
    def balanced(self) -> bool:
        return self.nbc_verdict.balanced

    def as_colored_complement(self) -> ColoredGraph:
        if not self.balanced:
            raise HypothesisError("The coloring is neither NBC on G nor CNBC on its complement")
        return ColoredGraph(
            self.complement, self.coloring, Provenance("complement", {"k": self.coloring.k})
        )


def complement_transfer(graph: Graph, coloring: Coloring) -> ComplementResult:
    """An equitable coloring is NBC on G exactly when it is CNBC on the complement."""
    if not coloring.is_equitable():
        raise HypothesisError(
            "complement_transfer needs equal color classes, got sizes " + str(coloring.class_sizes())
        )
    other = complement(graph)
    nbc = verify_nbc(graph, coloring)
    cnbc = verify_cnbc(other, coloring)
    assert nbc.balanced == cnbc.balanced, "complement duality failed for an equitable coloring"
    return ComplementResult(graph, other, coloring, nbc, cnbc)


def strong_product_transfer(colored: ColoredGraph, other: Graph, vertex_budget: Optional[int] = None) -> ColoredGraph:
    """G strong H colored by c(g, h) = c_G(g)."""
    _require_mode(colored, BalanceMode.CNBC, "strong_product_transfer")
    product = build_product(ProductKind.STRONG, colored.graph, other, vertex_budget)
    index = VertexPairIndex(colored.graph.vertex_count, other.vertex_count)
    coloring = _projection(colored.k, index, colored.coloring.colors, 0)
    return ColoredGraph(product, coloring, Provenance("strong", {"k": colored.k}))


def cartesian_k2_transfer(colored: ColoredGraph) -> ColoredGraph:
    """G box K_2 colored by projection to G is neighborhood balanced."""
    _require_mode(colored, BalanceMode.CNBC, "cartesian_k2_transfer")
    product = build_product(ProductKind.CARTESIAN, colored.graph, complete_graph(2))
    index = VertexPairIndex(colored.graph.vertex_count, 2)
    coloring = _projection(colored.k, index, colored.coloring.colors, 0)
    return ColoredGraph(product, coloring, Provenance("cartesian_k2", {"k": colored.k}), BalanceMode.NBC)


def cartesian_mixed_transfer(
    colored: ColoredGraph, other: ColoredGraph, vertex_budget: Optional[int] = None
) -> ColoredGraph:
    """G box H for a CNBC G and an NBC H, colored by (c_G(g) + c_H(h) - 1) mod k + 1."""
    _require_mode(colored, BalanceMode.CNBC, "cartesian_mixed_transfer (left factor)")
    _require_mode(other, BalanceMode.NBC, "cartesian_mixed_transfer (right factor)")
    _require_same_k(colored, other, "cartesian_mixed_transfer")
    k = colored.k
    product = build_product(ProductKind.CARTESIAN, colored.graph, other.graph, vertex_budget)
    index = VertexPairIndex(colored.graph.vertex_count, other.graph.vertex_count)
    left, right = colored.coloring.colors, other.coloring.colors
    coloring = Coloring(k, tuple((left[g] + right[h] - 1) % k + 1 for g, h in index.pairs()))
    return ColoredGraph(product, coloring, Provenance("cartesian_mixed", {"k": k}))


def _lexicographic(graph: Graph, colored: ColoredGraph, mode: BalanceMode, who: str,
                   vertex_budget: Optional[int]) -> ColoredGraph:
    _require_mode(colored, mode, who)
    _require_equitable(colored, who)
    product = build_product(ProductKind.LEXICOGRAPHIC, graph, colored.graph, vertex_budget)
    index = VertexPairIndex(graph.vertex_count, colored.graph.vertex_count)
    coloring = _projection(colored.k, index, colored.coloring.colors, 1)
    return ColoredGraph(product, coloring, Provenance(who.removesuffix("_transfer"), {"k": colored.k}), mode)


def lexicographic_transfer(graph: Graph, colored: ColoredGraph, vertex_budget: Optional[int] = None) -> ColoredGraph:
    """G[H] colored by c(g, h) = c_H(h) for an equitable CNBC coloring of H."""
    return _lexicographic(graph, colored, BalanceMode.CNBC, "lexicographic_transfer", vertex_budget)


def lexicographic_nbc_transfer(graph: Graph, colored: ColoredGraph, vertex_budget: Optional[int] = None) -> ColoredGraph:
    """The open-neighborhood counterpart: an equitable NBC coloring of H lifts to G[H]."""
    return _lexicographic(graph, colored, BalanceMode.NBC, "lexicographic_nbc_transfer", vertex_budget)


def lexicographic_transfer_by_duality(graph: Graph, colored: ColoredGraph,
                                      vertex_budget: Optional[int] = None) -> ColoredGraph:
    """Reach the CNBC coloring of G[H] through complements.

    The equitable CNBC coloring of H is NBC on the complement of H, so it lifts
    to an NBC coloring of co-G[co-H], whose complement is G[H].
    """
    _require_mode(colored, BalanceMode.CNBC, "lexicographic_transfer_by_duality")
    _require_equitable(colored, "lexicographic_transfer_by_duality")
    dual = complement_transfer(colored.graph, colored.coloring)
    assert dual.balanced, "an equitable CNBC coloring of H is not NBC on its complement"
    co_factor = ColoredGraph(dual.complement, colored.coloring, Provenance("complement"), BalanceMode.NBC)
    co_product = lexicographic_nbc_transfer(complement(graph), co_factor, vertex_budget)
    back = complement_transfer(co_product.graph, co_product.coloring).as_colored_complement()

    direct = lexicographic_transfer(graph, colored, vertex_budget)
    assert back.graph == direct.graph, "complement of co-G[co-H] differs from G[H]"
    assert back.coloring == direct.coloring
    return ColoredGraph(back.graph.with_labels(direct.graph.labels), back.coloring,
                        Provenance("lexicographic_by_duality", {"k": colored.k}))


def join_transfer(colored: ColoredGraph, other: ColoredGraph) -> ColoredGraph:
    """G join H colored side by side, both colorings equitable CNBC with the same k."""
    for side, item in (("left", colored), ("right", other)):
        _require_mode(item, BalanceMode.CNBC, "join_transfer (" + side + ")")
        _require_equitable(item, "join_transfer (" + side + ")")
    _require_same_k(colored, other, "join_transfer")
    joined = build_product(ProductKind.JOIN, colored.graph, other.graph)
    coloring = Coloring(colored.k, colored.coloring.colors + other.coloring.colors)
    return ColoredGraph(joined, coloring, Provenance("join", {"k": colored.k}))


def direct_k2_transfer(colored: ColoredGraph) -> ColoredGraph:
    """The bipartite double cover G x K_2 colored by projection to G."""
    _require_mode(colored, BalanceMode.CNBC, "direct_k2_transfer")
    product = build_product(ProductKind.DIRECT, colored.graph, complete_graph(2))
    index = VertexPairIndex(colored.graph.vertex_count, 2)
    coloring = _projection(colored.k, index, colored.coloring.colors, 0)
    return ColoredGraph(product, coloring, Provenance("direct_k2", {"k": colored.k}))


# ----------------------------------------------------------------------
# Impossibility certificates
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DirectProductObstruction:
    """G x H cannot be CNBC: every product degree is 1 mod k, not k-1."""

    k: int
    left_degree: int
    right_degree: int
    vertex: tuple[int, int]

    @property
    def product_degree(self) -> int:
        return self.left_degree * self.right_degree

    @property
    def residue(self) -> int:
        return self.product_degree % self.k


def direct_product_obstruction(left: Graph, right: Graph, k: int) -> DirectProductObstruction:
    """Certify that G x H has no CNBC k-coloring when every degree of G and H is -1 mod k.

    Degrees multiply in the direct product, so each is (-1)(-1) = 1 mod k,
    which differs from -1 once k >= 3.
    """
    if k < 3:
        raise HypothesisError(
            "the direct product obstruction needs k >= 3; for k = 2, 1 = -1 mod 2 and "
            "K_2 x K_2 = 2K_2 is CNBC"
        )
    for side, graph in (("left", left), ("right", right)):
        if graph.vertex_count == 0:
            raise HypothesisError("the " + side + " factor of the direct product is empty")
        check = check_degree_cnbc(graph, k)
        if not check:
            raise HypothesisError("the " + side + " factor fails the degree hypothesis: " + check.detail)
    obstruction = DirectProductObstruction(k, left.degree(0), right.degree(0), (0, 0))
    assert obstruction.residue == 1 and obstruction.residue != k - 1
    return obstruction


@dataclass(frozen=True)
class Counterexample:
    """A graph built from non-equitable inputs, with the lifted coloring and the degree witness."""

    name: str
    graph: Graph
    coloring: Coloring
    gate: str  # the hypothesis error the transfer raises
    verdict: BalanceVerdict
    degree_check: CheckResult
    vertex: int
    degree: int


def _require_counterexample_k(k: int) -> None:
    if k < 3:
        raise HypothesisError("the counterexample degrees are -1 mod k only when k >= 3; got k=" + str(k))


def _gate_message(transfer, *args) -> str:
    try:
        transfer(*args)
    except HypothesisError as exc:
        return exc.detail
    raise AssertionError(transfer.__name__ + " accepted a non-equitable coloring")


def lexicographic_counterexample(k: int) -> Counterexample:
    """K_k[H_k]: u_k has degree 4k^2 - 4k + 1, which is 1 mod k."""
    _require_counterexample_k(k)
    hk = build_hk(k)
    base = complete_graph(k)
    graph = build_product(ProductKind.LEXICOGRAPHIC, base, hk.graph)
    index = VertexPairIndex(k, hk.graph.vertex_count)
    coloring = _projection(k, index, hk.coloring.colors, 1)
    u_k = 2 * k - 1  # after the k host vertices come u_1..u_k
    vertex = index.flat(0, u_k)
    degree = graph.degree(vertex)
    assert degree == 4 * k * k - 4 * k + 1
    return Counterexample(
        "lexicographic", graph, coloring,
        _gate_message(lexicographic_transfer, base, hk),
        verify_cnbc(graph, coloring), check_degree_cnbc(graph, k), vertex, degree,
    )


def join_counterexample(k: int) -> Counterexample:
    """K_k join H_k: a K_k vertex has degree 5k - 3, which is -3 mod k."""
    _require_counterexample_k(k)
    hk = build_hk(k)
    rainbow = color_complete(k, k)
    graph = build_product(ProductKind.JOIN, rainbow.graph, hk.graph)
    coloring = Coloring(k, rainbow.coloring.colors + hk.coloring.colors)
    degree = graph.degree(0)
    assert degree == 5 * k - 3
    return Counterexample(
        "join", graph, coloring,
        _gate_message(join_transfer, rainbow, hk),
        verify_cnbc(graph, coloring), check_degree_cnbc(graph, k), 0, degree,
    )


# ----------------------------------------------------------------------
# Dispatch
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TransferRequest:
    """Inputs for one transfer.

    ``colored`` is the main colored factor. ``other`` is the second colored
    factor (cartesian_mixed, join), ``graph`` an uncolored factor (strong,
    lexicographic kinds) and ``p`` the target color count of reduce_colors.
    """

    kind: TransferKind
    colored: ColoredGraph
    other: Optional[ColoredGraph] = None
    graph: Optional[Graph] = None
    p: Optional[int] = None


def _required(value, kind: TransferKind, what: str):
    if value is None:
        raise HypothesisError("the " + kind.value + " transfer needs " + what)
    return value


def run_transfer(request: TransferRequest, vertex_budget: Optional[int] = None) -> ColoredGraph:
    kind = TransferKind(request.kind)
    colored = request.colored
    logger.info("Running %s transfer on %r", kind.value, colored.graph)

    if kind is TransferKind.REDUCE_COLORS:
        p = _required(request.p, kind, "a target color count p")
        _require_mode(colored, BalanceMode.CNBC, "reduce_colors")
        reduced = reduce_colors(colored.graph, colored.coloring, p)
        return ColoredGraph(colored.graph, reduced, Provenance("reduce_colors", {"k": colored.k, "p": p}))
    if kind is TransferKind.COMPLEMENT:
        return complement_transfer(colored.graph, colored.coloring).as_colored_complement()
    if kind is TransferKind.STRONG:
        return strong_product_transfer(colored, _required(request.graph, kind, "a second graph"), vertex_budget)
    if kind is TransferKind.CARTESIAN_K2:
        return cartesian_k2_transfer(colored)
    if kind is TransferKind.CARTESIAN_MIXED:
        return cartesian_mixed_transfer(colored, _required(request.other, kind, "an NBC-colored second graph"),
                                        vertex_budget)
    if kind is TransferKind.JOIN:
        return join_transfer(colored, _required(request.other, kind, "a second colored graph"))
    if kind is TransferKind.DIRECT_K2:
        return direct_k2_transfer(colored)

    outer = _required(request.graph, kind, "an outer graph G for G[H]")
    if kind is TransferKind.LEXICOGRAPHIC:
        return lexicographic_transfer(outer, colored, vertex_budget)
    if kind is TransferKind.LEXICOGRAPHIC_NBC:
        return lexicographic_nbc_transfer(outer, colored, vertex_budget)
    return lexicographic_transfer_by_duality(outer, colored, vertex_budget)
