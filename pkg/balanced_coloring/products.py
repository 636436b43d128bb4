"""
Binary graph operations for Balanced Coloring.

The four products flatten ``(g, h)`` row-major through VertexPairIndex and
label each vertex with the pair. Join and disjoint union place G's vertices
first and offset H's by ``|V(G)|``; their labels are ``(side, original id)``.
"""

import enum
import logging
from typing import Optional

from balanced_coloring.graphs import check_vertex_budget
from balanced_coloring.models.graph import Graph, VertexPairIndex

logger = logging.getLogger(__name__)


class ProductKind(str, enum.Enum):
    CARTESIAN = "cartesian"
    STRONG = "strong"
    DIRECT = "direct"
    LEXICOGRAPHIC = "lexicographic"
    JOIN = "join"
    DISJOINT_UNION = "disjoint_union"


PAIR_PRODUCTS = (
    ProductKind.CARTESIAN,
    ProductKind.STRONG,
    ProductKind.DIRECT,
    ProductKind.LEXICOGRAPHIC,
)


def build_product(
    kind: ProductKind | str,
    left: Graph,
    right: Graph,
    vertex_budget: Optional[int] = None,
) -> Graph:
    kind = ProductKind(kind)
    if kind in PAIR_PRODUCTS:
        check_vertex_budget(left.vertex_count * right.vertex_count, vertex_budget, kind.value + " product")
        graph = _pair_product(kind, left, right)
    else:
        check_vertex_budget(left.vertex_count + right.vertex_count, vertex_budget, kind.value)
        graph = _side_by_side(left, right, join=kind is ProductKind.JOIN)
    logger.debug("Built %s of %r and %r: %r", kind.value, left, right, graph)
    return graph


def _pair_product(kind: ProductKind, left: Graph, right: Graph) -> Graph:
    index = VertexPairIndex(left.vertex_count, right.vertex_count)
    adjacency: list[set[int]] = []
    for g, h in index.pairs():
        neighbors: set[int] = set()
        if kind is ProductKind.CARTESIAN:
            neighbors.update(index.flat(g, h2) for h2 in right.neighbors(h))
            neighbors.update(index.flat(g2, h) for g2 in left.neighbors(g))
        elif kind is ProductKind.DIRECT:
            neighbors.update(
                index.flat(g2, h2) for g2 in left.neighbors(g) for h2 in right.neighbors(h)
            )
        elif kind is ProductKind.STRONG:
            left_closed = left.neighbors(g) + (g,)
            right_closed = right.neighbors(h) + (h,)
            neighbors.update(index.flat(g2, h2) for g2 in left_closed for h2 in right_closed)
            neighbors.discard(index.flat(g, h))
        else:  # lexicographic
            neighbors.update(
                index.flat(g2, h2) for g2 in left.neighbors(g) for h2 in range(right.vertex_count)
            )
            neighbors.update(index.flat(g, h2) for h2 in right.neighbors(h))
        adjacency.append(neighbors)
    return Graph.from_adjacency(adjacency, list(index.pairs()))


def _side_by_side(left: Graph, right: Graph, join: bool) -> Graph:
    offset = left.vertex_count
    n = offset + right.vertex_count
    adjacency: list[set[int]] = []
    for g in left.vertices():
        neighbors = set(left.neighbors(g))
        if join:
            neighbors.update(range(offset, n))
        adjacency.append(neighbors)
    for h in right.vertices():
        neighbors = {offset + h2 for h2 in right.neighbors(h)}
        if join:
            neighbors.update(range(offset))
        adjacency.append(neighbors)
    labels = [(0, g) for g in left.vertices()] + [(1, h) for h in right.vertices()]
    return Graph.from_adjacency(adjacency, labels)
