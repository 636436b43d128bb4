"""
Graph model for Balanced Coloring.

Graphs are simple, undirected and immutable. Vertices are the integers
``0..vertex_count-1``; product and Hamming constructions attach an integer
tuple label to every vertex.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from balanced_coloring.errors import GraphError

Label = tuple[int, ...]


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_neighbors", "_neighbor_sets", "_labels", "_edge_count")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Optional[Sequence[Label]] = None,
    ):
        if vertex_count < 0:
            raise GraphError("Vertex count must be nonnegative, got " + str(vertex_count))
        adjacency: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            _check_vertex(u, vertex_count)
            _check_vertex(v, vertex_count)
            if u == v:
                raise GraphError("Loop at vertex " + str(u) + " is not allowed in a simple graph")
            adjacency[u].add(v)
            adjacency[v].add(u)
        self._freeze(adjacency, labels)

    @classmethod
    def from_adjacency(
        cls,
        adjacency: Sequence[Iterable[int]],
        labels: Optional[Sequence[Label]] = None,
    ) -> "Graph":
        """Build a graph from per-vertex neighbor collections, checking symmetry."""
        sets = [set(neighbors) for neighbors in adjacency]
        n = len(sets)
        for v, neighbors in enumerate(sets):
            for u in neighbors:
                _check_vertex(u, n)
                if u == v:
                    raise GraphError("Loop at vertex " + str(v) + " is not allowed in a simple graph")
                if v not in sets[u]:
                    raise GraphError(
                        "Adjacency is not symmetric: " + str(u) + " in N(" + str(v)
                        + ") but " + str(v) + " not in N(" + str(u) + ")"
                    )
        graph = cls.__new__(cls)
        graph._freeze(sets, labels)
        return graph

    def _freeze(self, adjacency: list[set[int]], labels: Optional[Sequence[Label]]) -> None:
        if labels is not None:
            labels = tuple(tuple(label) for label in labels)
            if len(labels) != len(adjacency):
                raise GraphError(
                    "Expected " + str(len(adjacency)) + " labels, got " + str(len(labels))
                )
        self._neighbors = tuple(tuple(sorted(neighbors)) for neighbors in adjacency)
        self._neighbor_sets = tuple(frozenset(neighbors) for neighbors in adjacency)
        self._labels = labels
        self._edge_count = sum(len(neighbors) for neighbors in adjacency) // 2

    # ------------------------------------------------------------------
    # Basic queries
    # ------------------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._neighbors)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def labels(self) -> Optional[tuple[Label, ...]]:
        return self._labels

    def vertices(self) -> range:
        return range(len(self._neighbors))

    def label(self, v: int) -> Optional[Label]:
        return None if self._labels is None else self._labels[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Open neighborhood N(v), sorted."""
        return self._neighbors[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._neighbor_sets[v]

    def closed_neighborhood(self, v: int) -> tuple[int, ...]:
        """Closed neighborhood N[v], sorted."""
        return tuple(sorted(self._neighbor_sets[v] | {v}))

    def degree(self, v: int) -> int:
        return len(self._neighbors[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(neighbors) for neighbors in self._neighbors)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, neighbors in enumerate(self._neighbors):
            for v in neighbors:
                if u < v:
                    yield (u, v)

    def regular_degree(self) -> Optional[int]:
        """The common degree r if the graph is r-regular, else None."""
        degrees = set(self.degrees())
        if not degrees:
            return 0
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def isolated_vertices(self) -> list[int]:
        return [v for v, neighbors in enumerate(self._neighbors) if not neighbors]

    # ------------------------------------------------------------------
    # Derived graphs
    # ------------------------------------------------------------------

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced by ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
        position = {}
        for i, v in enumerate(vertices):
            _check_vertex(v, self.vertex_count)
            if v in position:
                raise GraphError("Vertex " + str(v) + " listed twice in induced subgraph")
            position[v] = i
        adjacency = [
            {position[u] for u in self._neighbors[v] if u in position} for v in vertices
        ]
        labels = None if self._labels is None else [self._labels[v] for v in vertices]
        graph = Graph.__new__(Graph)
        graph._freeze(adjacency, labels)
        return graph

    def with_labels(self, labels: Optional[Sequence[Label]]) -> "Graph":
        graph = Graph.__new__(Graph)
        graph._freeze([set(neighbors) for neighbors in self._neighbors], labels)
        return graph

    def assert_invariants(self) -> None:
        """Assert loop-freeness, symmetry and range of every adjacency entry."""
        n = self.vertex_count
        for v, neighbors in enumerate(self._neighbor_sets):
            assert v not in neighbors, "loop at " + str(v)
            for u in neighbors:
                assert 0 <= u < n, "neighbor out of range"
                assert v in self._neighbor_sets[u], "asymmetric adjacency"

    # Labels do not take part in equality: two graphs are equal when their
    # vertex sets and edge sets coincide.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._neighbors == other._neighbors

    def __hash__(self) -> int:
        return hash(self._neighbors)

    def __repr__(self):
        return (
            "<Graph(vertices=" + str(self.vertex_count)
            + ", edges=" + str(self.edge_count)
            + ", labeled=" + str(self._labels is not None) + ")>"
        )


def _check_vertex(v: int, vertex_count: int) -> None:
    if not 0 <= v < vertex_count:
        raise GraphError(
            "Vertex id " + str(v) + " out of range [0, " + str(vertex_count) + ")"
        )


@dataclass(frozen=True)
class VertexPairIndex:
    """Row-major bijection between pairs ``(g, h)`` and flat ids ``g * right_size + h``."""

    left_size: int
    right_size: int

    def __post_init__(self):
        if self.left_size < 0 or self.right_size < 0:
            raise GraphError("Pair index sizes must be nonnegative")

    @property
    def size(self) -> int:
        return self.left_size * self.right_size

    def flat(self, g: int, h: int) -> int:
        if not (0 <= g < self.left_size and 0 <= h < self.right_size):
            raise GraphError("Pair (" + str(g) + ", " + str(h) + ") out of range")
        return g * self.right_size + h

    def pair(self, index: int) -> tuple[int, int]:
        if not 0 <= index < self.size:
            raise GraphError("Flat id " + str(index) + " out of range")
        return divmod(index, self.right_size)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for g in range(self.left_size):
            for h in range(self.right_size):
                yield (g, h)
