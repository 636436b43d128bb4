"""
Utilities package for Balanced Coloring
"""

from .coloring_io import read_coloring, write_coloring
from .graph_io import graph_digest, read_graph, write_graph

__all__ = [
    "read_coloring",
    "write_coloring",
    "read_graph",
    "write_graph",
    "graph_digest",
]
