import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from balanced_coloring.coloring import (
    class_stats,
    cyclic_shift,
    neighborhood_counts,
    permute_colors,
    verify,
    verify_cnbc,
    verify_nbc,
)
from balanced_coloring.errors import ColoringError, ParseError
from balanced_coloring.graphs import complete_graph, cycle_graph, empty_graph, path_graph, star_graph
from balanced_coloring.models.coloring import BalanceMode, Coloring
from balanced_coloring.utils.coloring_io import (
    ColoringFormat,
    detect_format,
    format_csv,
    parse_csv,
    parse_json,
    read_coloring,
    write_coloring,
)
from tests.strategies import colored_graphs


def test_coloring_rejects_bad_colors():
    with pytest.raises(ColoringError):
        Coloring(1, (1, 1))
    with pytest.raises(ColoringError):
        Coloring(2, (1, 0))
    with pytest.raises(ColoringError):
        Coloring(2, (1, 3))


def test_coloring_classes():
    coloring = Coloring(3, (1, 3, 1, 3))
    assert coloring.classes() == [[0, 2], [], [1, 3]]
    assert coloring.class_sizes() == (2, 0, 2)
    assert not coloring.is_equitable()
    assert Coloring.from_zero_based(3, (0, 2, 1)).colors == (1, 3, 2)
    assert coloring.restrict([3, 0]).colors == (3, 1)


def test_every_even_split_of_k6_is_cnbc():
    graph = complete_graph(6)
    splits = list(itertools.combinations(range(6), 3))
    assert len(splits) == 20
    for first in splits:
        coloring = Coloring(2, tuple(1 if v in first else 2 for v in range(6)))
        assert verify_cnbc(graph, coloring)


def test_c9_repeating_pattern_is_cnbc():
    coloring = Coloring(3, (1, 2, 3) * 3)
    assert verify_cnbc(cycle_graph(9), coloring)


def test_no_2_coloring_of_k13_is_cnbc():
    graph = star_graph(3)
    for colors in itertools.product((1, 2), repeat=4):
        assert not verify_cnbc(graph, Coloring(2, colors))


def test_c4_open_neighborhoods():
    c4 = cycle_graph(4)
    assert verify_nbc(c4, Coloring(2, (1, 1, 2, 2)))
    assert not verify_nbc(c4, Coloring(2, (1, 2, 1, 2)))


@given(st.lists(st.integers(1, 3), min_size=6, max_size=6))
def test_empty_graph_is_trivially_nbc(colors):
    assert verify_nbc(empty_graph(6), Coloring(3, tuple(colors)))


def test_verdict_names_lowest_offending_vertex():
    verdict = verify(path_graph(3), Coloring(2, (1, 1, 2)), BalanceMode.CNBC)
    assert not verdict
    assert verdict.vertex == 0
    assert verdict.counts == (2, 0)
    assert verify(path_graph(3), Coloring(2, (1, 1, 2)), "cnbc").mode is BalanceMode.CNBC


def test_verifier_checks_sizes():
    with pytest.raises(ColoringError):
        verify(path_graph(3), Coloring(2, (1, 2)))


def test_neighborhood_counts():
    coloring = Coloring(2, (1, 2, 2))
    assert neighborhood_counts(path_graph(3), coloring, 1, BalanceMode.CNBC) == (1, 2)
    assert neighborhood_counts(path_graph(3), coloring, 1, BalanceMode.NBC) == (1, 1)


def test_cyclic_shift():
    coloring = Coloring(3, (1, 2, 3))
    assert cyclic_shift(coloring, 1).colors == (2, 3, 1)
    assert cyclic_shift(coloring, 0) == coloring
    assert cyclic_shift(coloring, 3) == coloring
    assert cyclic_shift(cyclic_shift(coloring, 2), 1) == coloring


@given(colored_graphs(3), st.integers(0, 5))
def test_shifts_preserve_balance(colored, t):
    assert verify_cnbc(colored.graph, cyclic_shift(colored.coloring, t))


def test_permute_colors():
    coloring = Coloring(3, (1, 2, 3, 3))
    assert permute_colors(coloring, [2, 3, 1]).colors == (2, 3, 1, 1)
    with pytest.raises(ColoringError):
        permute_colors(coloring, [1, 1, 2])


def test_class_stats_of_k6():
    stats = class_stats(complete_graph(6), Coloring(2, (1, 1, 1, 2, 2, 2)))
    assert stats.sizes == (3, 3)
    assert stats.between(1, 2) == stats.between(2, 1) == 9
    assert stats.intra(1) == stats.intra(2) == 3
    assert stats.total_edges() == 15
    assert stats.total_vertices() == 6


def test_class_stats_of_edgeless_graph():
    stats = class_stats(empty_graph(4), Coloring(2, (1, 2, 2, 2)))
    assert stats.sizes == (1, 3)
    assert stats.total_edges() == 0


def test_json_coloring_files(tmp_path):
    coloring = Coloring(3, (1, 2, 3, 1))
    path = tmp_path / "coloring.json"
    write_coloring(coloring, path)
    assert read_coloring(path) == coloring
    assert parse_json('{"k": 2, "colors": [2, 1]}').colors == (2, 1)


def test_json_errors():
    with pytest.raises(ParseError):
        parse_json('{"k": 2, "colors": [1, 3]}')
    with pytest.raises(ParseError):
        parse_json('{"k": 1, "colors": []}')
    with pytest.raises(ParseError):
        parse_json("not json")


def test_csv_keeps_k_with_empty_classes(tmp_path):
    coloring = Coloring(3, (1, 1, 1))
    path = tmp_path / "coloring.csv"
    write_coloring(coloring, path)
    assert detect_format(path) is ColoringFormat.CSV
    assert read_coloring(path) == coloring
    assert format_csv(coloring).startswith("# k=3\nvertex,color\n")


def test_csv_rows_in_any_order():
    assert parse_csv("# k=2\n2,1\n0,2\n1,1\n").colors == (2, 1, 1)


def test_csv_errors():
    with pytest.raises(ParseError):
        parse_csv("0,1\n1,2\n")
    with pytest.raises(ParseError) as excinfo:
        parse_csv("# k=2\n0,1\n0,2\n")
    assert excinfo.value.line_number == 3
    with pytest.raises(ParseError):
        parse_csv("# k=2\n0,1\n2,2\n")
    with pytest.raises(ParseError):
        parse_csv("# k=2\n0,3\n")
    with pytest.raises(ParseError):
        parse_csv("# k=2\n0,a\n")
