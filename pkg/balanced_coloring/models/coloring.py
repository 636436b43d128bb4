"""
Coloring model for Balanced Coloring.

A coloring is a total map from vertex ids to colors ``1..k``. Color classes
``V_1..V_k`` may be empty; the verifiers, not this type, reject imbalance.
"""

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from balanced_coloring.errors import ColoringError


class BalanceMode(str, enum.Enum):
    """Which neighborhood must be balanced."""
    CNBC = "cnbc"  # closed neighborhood N[v]
    NBC = "nbc"    # open neighborhood N(v)


@dataclass(frozen=True)
class Coloring:
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ColoringError("A coloring needs k >= 2 colors, got k=" + str(self.k))
        object.__setattr__(self, "colors", tuple(self.colors))
        for v, color in enumerate(self.colors):
            if not 1 <= color <= self.k:
                raise ColoringError(
                    "Vertex " + str(v) + " has color " + str(color)
                    + " outside 1.." + str(self.k)
                )

    @classmethod
    def from_zero_based(cls, k: int, colors: Iterable[int]) -> "Coloring":
        """Internal arithmetic is 0-based; this is the single boundary conversion."""
        return cls(k, tuple(color + 1 for color in colors))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(color - 1 for color in self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def classes(self) -> list[list[int]]:
        """Color classes V_1..V_k as sorted vertex lists (index 0 is V_1)."""
        result: list[list[int]] = [[] for _ in range(self.k)]
        for v, color in enumerate(self.colors):
            result[color - 1].append(v)
        return result

    def class_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.k
        for color in self.colors:
            sizes[color - 1] += 1
        return tuple(sizes)

    def is_equitable(self) -> bool:
        return len(set(self.class_sizes())) == 1

    def restrict(self, vertices: Sequence[int]) -> "Coloring":
        """Coloring of ``vertices`` renumbered ``0..len-1`` in the given order."""
        return Coloring(self.k, tuple(self.colors[v] for v in vertices))

    def __repr__(self):
        return (
            "<Coloring(k=" + str(self.k)
            + ", vertices=" + str(len(self.colors))
            + ", sizes=" + str(self.class_sizes()) + ")>"
        )


@dataclass(frozen=True)
class ClassStats:
    """Class sizes ``|V_i|`` and edge counts ``|E(V_i, V_j)|`` for ``i <= j``.

    Keys of ``cross_edges`` are 1-based color pairs; ``(i, i)`` counts the
    edges inside ``V_i`` once.
    """

    sizes: tuple[int, ...]
    cross_edges: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def between(self, i: int, j: int) -> int:
        return self.cross_edges[(min(i, j), max(i, j))]

    def intra(self, i: int) -> int:
        return self.cross_edges[(i, i)]

    def total_vertices(self) -> int:
        return sum(self.sizes)

    def total_edges(self) -> int:
        return sum(self.cross_edges.values())
