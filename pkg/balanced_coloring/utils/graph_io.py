"""
Graph file formats for Balanced Coloring.

Edge list: one ``u v`` pair per line, 0-based ids, ``#`` comments. A
``# vertices N`` comment declares the vertex count so isolated vertices
survive a round trip.

DIMACS: ``c`` comments, one ``p edge n m`` line, then ``e u v`` lines with
1-based ids.

Writers emit edges in sorted canonical order.
"""

import enum
import hashlib
import re
from pathlib import Path
from typing import Optional

from balanced_coloring.errors import ParseError
from balanced_coloring.models.graph import Graph

VERTICES_DIRECTIVE = re.compile(r"^#\s*vertices\s+(\d+)\s*$")
DIMACS_SUFFIXES = (".col", ".dimacs")


class GraphFormat(str, enum.Enum):
    EDGE_LIST = "edges"
    DIMACS = "dimacs"


def detect_format(path: Path | str) -> GraphFormat:
    if Path(path).suffix.lower() in DIMACS_SUFFIXES:
        return GraphFormat.DIMACS
    return GraphFormat.EDGE_LIST


def read_graph(path: Path | str, fmt: Optional[GraphFormat | str] = None) -> Graph:
    fmt = detect_format(path) if fmt is None else GraphFormat(fmt)
    text = Path(path).read_text()
    if fmt is GraphFormat.DIMACS:
        return parse_dimacs(text)
    return parse_edge_list(text)


def write_graph(graph: Graph, path: Path | str, fmt: Optional[GraphFormat | str] = None) -> None:
    fmt = detect_format(path) if fmt is None else GraphFormat(fmt)
    text = format_dimacs(graph) if fmt is GraphFormat.DIMACS else format_edge_list(graph)
    Path(path).write_text(text)


def _parse_int(token: str, line_number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError("expected an integer vertex id, got '" + token + "'", line_number) from None
    if value < 0:
        raise ParseError("vertex ids must be nonnegative, got " + token, line_number)
    return value


class _EdgeCollector:
    """Accumulates edges, rejecting loops and duplicates with the offending line."""

    def __init__(self):
        self.edges: list[tuple[int, int]] = []
        self.first_seen: dict[tuple[int, int], int] = {}
        self.max_id = -1

    def add(self, u: int, v: int, line_number: int, shown_u: int, shown_v: int) -> None:
        if u == v:
            raise ParseError("loop " + str(shown_u) + " " + str(shown_v) + " is not allowed", line_number)
        key = (min(u, v), max(u, v))
        if key in self.first_seen:
            raise ParseError(
                "duplicate edge " + str(shown_u) + " " + str(shown_v)
                + " (first seen on line " + str(self.first_seen[key]) + ")",
                line_number,
            )
        self.first_seen[key] = line_number
        self.edges.append(key)
        self.max_id = max(self.max_id, u, v)


def parse_edge_list(text: str) -> Graph:
    collector = _EdgeCollector()
    declared: Optional[int] = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = VERTICES_DIRECTIVE.match(line)
            if match:
                declared = int(match.group(1))
            continue
        tokens = line.split("#", 1)[0].split()
        if len(tokens) != 2:
            raise ParseError("expected 'u v', got '" + line + "'", line_number)
        u, v = (_parse_int(token, line_number) for token in tokens)
        collector.add(u, v, line_number, u, v)

    vertex_count = collector.max_id + 1
    if declared is not None:
        if declared < vertex_count:
            raise ParseError(
                "declared " + str(declared) + " vertices but edges use id " + str(collector.max_id)
            )
        vertex_count = declared
    return Graph(vertex_count, collector.edges)


def format_edge_list(graph: Graph) -> str:
    lines = ["# vertices " + str(graph.vertex_count)]
    lines.extend(str(u) + " " + str(v) for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Graph:
    collector = _EdgeCollector()
    header: Optional[tuple[int, int, int]] = None  # (n, m, line)
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("second problem line", line_number)
            if len(tokens) != 4 or tokens[1].lower() not in ("edge", "col"):
                raise ParseError("expected 'p edge n m', got '" + line + "'", line_number)
            header = (
                _parse_int(tokens[2], line_number),
                _parse_int(tokens[3], line_number),
                line_number,
            )
        elif tokens[0] == "e":
            if header is None:
                raise ParseError("edge line before the problem line", line_number)
            if len(tokens) != 3:
                raise ParseError("expected 'e u v', got '" + line + "'", line_number)
            u, v = (_parse_int(token, line_number) for token in tokens[1:])
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise ParseError(
                    "vertex out of range 1.." + str(header[0]) + " in '" + line + "'", line_number
                )
            collector.add(u - 1, v - 1, line_number, u, v)
        else:
            raise ParseError("unknown line format '" + line + "'", line_number)

    if header is None:
        raise ParseError("missing 'p edge n m' problem line")
    n, m, header_line = header
    if len(collector.edges) != m:
        raise ParseError(
            "problem line declares " + str(m) + " edges but " + str(len(collector.edges)) + " were given",
            header_line,
        )
    return Graph(n, collector.edges)


def format_dimacs(graph: Graph) -> str:
    lines = ["p edge " + str(graph.vertex_count) + " " + str(graph.edge_count)]
    lines.extend("e " + str(u + 1) + " " + str(v + 1) for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def graph_digest(graph: Graph) -> str:
    """sha256 of the canonical edge list; equal graphs share a digest."""
    return hashlib.sha256(format_edge_list(graph).encode()).hexdigest()
