"""
Domain and database models for Balanced Coloring
"""

from .graph import Graph, VertexPairIndex
from .coloring import BalanceMode, ClassStats, Coloring
from .certified_coloring import CertifiedColoring
from .solve_run import SolveRun

__all__ = [
    "Graph",
    "VertexPairIndex",
    "BalanceMode",
    "ClassStats",
    "Coloring",
    "CertifiedColoring",
    "SolveRun",
]
