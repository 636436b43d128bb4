import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balanced_coloring.constructors import color_complete, color_hamming
from balanced_coloring.diagnostics import (
    CheckStatus,
    Verdict,
    check_counting,
    check_degree_cnbc,
    check_degree_nbc,
    check_global_divisibility,
    check_order,
    check_regular_counting,
    check_regular_divisibility,
    preflight,
    twin_partition,
)
from balanced_coloring.errors import ContractViolation, HypothesisError
from balanced_coloring.graphs import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    hamming_graph,
    path_graph,
    star_graph,
)
from balanced_coloring.models.coloring import Coloring
from balanced_coloring.models.graph import Graph
from balanced_coloring.solver import SolveOptions, SolveStatus, brute_force, solve
from tests.strategies import graphs


def test_k13_fails_global_divisibility():
    report = preflight(star_graph(3), 2)
    assert report.verdict is Verdict.DEFINITELY_NOT_CNBC
    failure = report.check("global_divisibility")
    assert failure.status is CheckStatus.FAIL
    assert failure.witness == {"total": 10}
    assert report.check("degree_cnbc").passed
    assert report.check("regular_divisibility").status is CheckStatus.SKIPPED


def test_k15_passes_every_check_but_has_no_coloring():
    graph = star_graph(5)
    report = preflight(graph, 2)
    assert report.verdict is Verdict.UNKNOWN
    assert not report.failures()
    assert brute_force(graph, 2) == []
    assert solve(graph, SolveOptions(k=2)).status is SolveStatus.UNSATISFIABLE


def test_triangle_with_pendant_fails_degree_check():
    graph = Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    assert check_global_divisibility(graph, 2).passed
    result = check_degree_cnbc(graph, 2)
    assert result.status is CheckStatus.FAIL
    assert result.witness == {"vertex": 1, "degree": 2}


def test_order_check():
    assert not check_order(path_graph(2), 3)
    assert check_order(complete_graph(3), 3)
    assert check_order(empty_graph(0), 3)


def test_k33_fails_only_the_regular_check():
    graph = complete_bipartite_graph(3, 3)
    report = preflight(graph, 2)
    assert [check.name for check in report.failures()] == ["regular_divisibility"]
    assert brute_force(graph, 2) == []


def test_regular_divisibility_passes():
    assert check_regular_divisibility(hamming_graph(3, 2), 2)
    assert check_regular_divisibility(complete_graph(6), 2)
    assert check_regular_divisibility(cycle_graph(9), 3)
    with pytest.raises(ContractViolation):
        check_regular_divisibility(path_graph(3), 2)


def test_nbc_degree_check():
    assert check_degree_nbc(cycle_graph(4), 2)
    assert not check_degree_nbc(path_graph(3), 2)


def test_disabled_checks_are_skipped():
    report = preflight(cycle_graph(4), 2, disabled=("degree_cnbc",))
    assert report.check("degree_cnbc").status is CheckStatus.SKIPPED
    assert report.verdict is Verdict.UNKNOWN
    assert preflight(cycle_graph(4), 2).verdict is Verdict.DEFINITELY_NOT_CNBC
    with pytest.raises(HypothesisError):
        preflight(cycle_graph(4), 2, disabled=("no_such_check",))


def test_preflight_needs_k_at_least_2():
    with pytest.raises(HypothesisError):
        preflight(cycle_graph(4), 1)


def test_hamming_4_3_passes_everything():
    report = preflight(hamming_graph(4, 3), 3)
    assert report.verdict is Verdict.UNKNOWN
    assert all(check.status is CheckStatus.PASS for check in report.checks)


def test_twin_partition():
    assert twin_partition(complete_bipartite_graph(2, 3)) == [(0, 1), (2, 3, 4)]
    assert twin_partition(complete_graph(4)) == [(0,), (1,), (2,), (3,)]
    assert twin_partition(star_graph(4)) == [(0,), (1, 2, 3, 4)]


def test_counting_identities_on_k6(k6):
    results = check_counting(k6.graph, k6.coloring)
    assert all(results)
    assert [result.name for result in results] == ["cross_edges", "intra_edges", "equal_classes_equal_intra"]


def test_counting_identities_on_rainbow_clique():
    rainbow = color_complete(4, 4)
    assert all(check_counting(rainbow.graph, rainbow.coloring))
    assert all(check_regular_counting(rainbow.graph, rainbow.coloring))


def test_regular_counting_on_hamming():
    colored = color_hamming(3, 2)
    assert all(check_regular_counting(colored.graph, colored.coloring))


def test_counting_rejects_unbalanced_input():
    with pytest.raises(ContractViolation):
        check_counting(cycle_graph(4), Coloring(2, (1, 1, 2, 2)))
    with pytest.raises(ContractViolation):
        check_regular_counting(path_graph(2), Coloring(2, (1, 1)))


def test_regular_counting_needs_a_regular_graph(certified_corpus):
    irregular = next(item for item in certified_corpus if item.graph.regular_degree() is None)
    with pytest.raises(ContractViolation):
        check_regular_counting(irregular.graph, irregular.coloring)


def test_counting_identities_hold_on_the_corpus(certified_corpus):
    assert len(certified_corpus) >= 50
    for colored in certified_corpus:
        assert all(check_counting(colored.graph, colored.coloring)), colored.provenance
        if colored.graph.regular_degree() is not None:
            assert all(check_regular_counting(colored.graph, colored.coloring)), colored.provenance


def test_necessary_checks_pass_on_the_corpus(certified_corpus):
    for colored in certified_corpus:
        assert preflight(colored.graph, colored.k).verdict is Verdict.UNKNOWN, colored.provenance


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=10), st.sampled_from([2, 3]))
def test_refutations_have_no_coloring(graph, k):
    report = preflight(graph, k)
    if report.verdict is Verdict.DEFINITELY_NOT_CNBC:
        assert brute_force(graph, k) == []
    else:
        assert not report.failures()
