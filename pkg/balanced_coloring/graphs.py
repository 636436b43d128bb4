"""
Graph generators for Balanced Coloring.

Complete graphs, cycles, Hamming graphs and the small test families, plus the
complement operation and conversions to and from networkx.
"""

import itertools
import logging
from typing import Iterator, Optional

import networkx as nx

from balanced_coloring.config import get_settings
from balanced_coloring.errors import BudgetExceededError, GraphError
from balanced_coloring.models.graph import Graph

logger = logging.getLogger(__name__)

# networkx's atlas lists every graph on at most this many vertices
ATLAS_MAX_VERTICES = 7


def check_vertex_budget(vertex_count: int, budget: Optional[int] = None, what: str = "graph") -> None:
    budget = get_settings().vertex_budget if budget is None else budget
    if vertex_count > budget:
        raise BudgetExceededError(
            what + " would have " + str(vertex_count)
            + " vertices, exceeding the vertex budget of " + str(budget)
        )


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("K_n needs n >= 1, got " + str(n))
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    """P_n on ``n`` vertices."""
    if n < 1:
        raise GraphError("P_n needs n >= 1, got " + str(n))
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("C_n needs n >= 3, got " + str(n))
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}; the center is vertex 0."""
    if leaves < 0:
        raise GraphError("A star needs a nonnegative number of leaves")
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b}; the first side is ``0..a-1``."""
    if a < 0 or b < 0:
        raise GraphError("Bipartition sizes must be nonnegative")
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def hamming_graph(d: int, k: int, vertex_budget: Optional[int] = None) -> Graph:
    """H(d, k) over the alphabet ``{0..k-1}``.

    Vertex ids are the tuples read as base-k numbers with the first coordinate
    most significant, so fixing a prefix selects a contiguous id range.
    """
    if d < 1:
        raise GraphError("H(d, k) needs d >= 1, got d=" + str(d))
    if k < 2:
        raise GraphError("H(d, k) needs k >= 2, got k=" + str(k))
    check_vertex_budget(k**d, vertex_budget, "H(" + str(d) + "," + str(k) + ")")

    labels = list(itertools.product(range(k), repeat=d))
    weights = [k ** (d - 1 - i) for i in range(d)]
    adjacency: list[set[int]] = []
    for v, label in enumerate(labels):
        neighbors = set()
        for i, a in enumerate(label):
            base = v - a * weights[i]
            for b in range(k):
                if b != a:
                    neighbors.add(base + b * weights[i])
        adjacency.append(neighbors)
    graph = Graph.from_adjacency(adjacency, labels)
    logger.debug("Built H(%d,%d) with %d vertices", d, k, graph.vertex_count)
    return graph


def complement(graph: Graph) -> Graph:
    n = graph.vertex_count
    everyone = set(range(n))
    adjacency = [everyone - graph.neighbor_set(v) - {v} for v in range(n)]
    return Graph.from_adjacency(adjacency, graph.labels)


def small_graphs(max_vertices: int) -> Iterator[Graph]:
    """Every graph on at most ``max_vertices`` vertices, up to isomorphism."""
    if max_vertices > ATLAS_MAX_VERTICES:
        raise GraphError(
            "The graph atlas only covers graphs on up to "
            + str(ATLAS_MAX_VERTICES) + " vertices"
        )
    for atlas_graph in nx.graph_atlas_g():
        if atlas_graph.number_of_nodes() > max_vertices:
            break
        yield from_networkx(atlas_graph)


def from_networkx(nx_graph: nx.Graph) -> Graph:
    """Convert a networkx graph; nodes are renumbered in iteration order."""
    if nx_graph.is_directed() or nx_graph.is_multigraph():
        raise GraphError("Only simple undirected graphs are supported")
    index = {node: i for i, node in enumerate(nx_graph.nodes())}
    return Graph(len(index), ((index[u], index[v]) for u, v in nx_graph.edges()))


def to_networkx(graph: Graph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(graph.vertices())
    nx_graph.add_edges_from(graph.edges())
    return nx_graph
