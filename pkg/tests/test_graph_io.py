import pytest

from balanced_coloring.errors import ParseError
from balanced_coloring.graphs import complete_graph, empty_graph, hamming_graph, path_graph
from balanced_coloring.models.graph import Graph
from balanced_coloring.utils.graph_io import (
    GraphFormat,
    detect_format,
    format_edge_list,
    graph_digest,
    parse_dimacs,
    parse_edge_list,
    read_graph,
    write_graph,
)


def test_edge_list_parsing():
    assert parse_edge_list("0 1\n1 2\n") == path_graph(3)
    assert parse_edge_list("# a path\n\n0 1  # first\n1 2\n") == path_graph(3)


def test_vertices_directive_keeps_isolated_vertices():
    graph = parse_edge_list("# vertices 5\n0 1\n")
    assert graph.vertex_count == 5
    assert graph.isolated_vertices() == [2, 3, 4]
    assert parse_edge_list("# vertices 3\n") == empty_graph(3)


def test_vertices_directive_too_small():
    with pytest.raises(ParseError):
        parse_edge_list("# vertices 2\n0 4\n")


def test_duplicate_edge_reports_both_lines():
    with pytest.raises(ParseError) as excinfo:
        parse_edge_list("0 1\n# comment\n1 0\n")
    assert excinfo.value.line_number == 3
    assert "first seen on line 1" in excinfo.value.detail


def test_edge_list_rejects_loops_and_garbage():
    with pytest.raises(ParseError) as excinfo:
        parse_edge_list("0 1\n2 2\n")
    assert excinfo.value.line_number == 2
    with pytest.raises(ParseError):
        parse_edge_list("0 x\n")
    with pytest.raises(ParseError):
        parse_edge_list("0 1 2\n")
    with pytest.raises(ParseError):
        parse_edge_list("0 -1\n")


def test_dimacs_parsing():
    text = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
    assert parse_dimacs(text) == complete_graph(3)
    assert parse_dimacs("p edge 4 0\n") == empty_graph(4)


def test_dimacs_errors():
    with pytest.raises(ParseError) as excinfo:
        parse_dimacs("e 1 2\np edge 2 1\n")
    assert excinfo.value.line_number == 1
    with pytest.raises(ParseError) as excinfo:
        parse_dimacs("p edge 3 2\ne 1 2\n")
    assert excinfo.value.line_number == 1
    with pytest.raises(ParseError):
        parse_dimacs("p edge 2 1\ne 1 3\n")
    with pytest.raises(ParseError):
        parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n")
    with pytest.raises(ParseError):
        parse_dimacs("c only comments\n")


def test_format_detection():
    assert detect_format("graph.col") is GraphFormat.DIMACS
    assert detect_format("graph.DIMACS") is GraphFormat.DIMACS
    assert detect_format("graph.edges") is GraphFormat.EDGE_LIST
    assert detect_format("graph.txt") is GraphFormat.EDGE_LIST


@pytest.mark.parametrize("suffix", [".edges", ".col"])
def test_files_survive_a_round_trip(tmp_path, suffix):
    graph = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4)])
    path = tmp_path / ("graph" + suffix)
    write_graph(graph, path)
    assert read_graph(path) == graph


def test_writer_is_canonical():
    graph = Graph(3, [(2, 1), (1, 0)])
    assert format_edge_list(graph) == "# vertices 3\n0 1\n1 2\n"


def test_digest_depends_only_on_edges():
    first = Graph(4, [(0, 1), (2, 3)])
    second = Graph(4, [(3, 2), (1, 0)]).with_labels([(0,), (1,), (2,), (3,)])
    assert graph_digest(first) == graph_digest(second)
    assert graph_digest(first) != graph_digest(Graph(5, [(0, 1), (2, 3)]))
    assert len(graph_digest(hamming_graph(3, 2))) == 64
