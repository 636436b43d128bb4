import time

import pytest
from hypothesis import given, settings
from pydantic import ValidationError

import balanced_coloring.solver as solver_module
from balanced_coloring.coloring import verify, verify_cnbc
from balanced_coloring.diagnostics import twin_partition
from balanced_coloring.constructors import build_hk, color_hamming, supergraph_embed
from balanced_coloring.errors import BudgetExceededError, SolverError
from balanced_coloring.graphs import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    small_graphs,
    star_graph,
)
from balanced_coloring.models.coloring import BalanceMode
from balanced_coloring.models.graph import Graph
from balanced_coloring.reduction import build_reduction
from balanced_coloring.solver import (
    Propagation,
    SolveOptions,
    SolveResult,
    SolveStatus,
    VertexOrder,
    brute_force,
    cross_validate,
    find_proper_coloring,
    solve,
)
from tests.strategies import graphs


def test_k6_two_colors():
    result = solve(complete_graph(6), SolveOptions(k=2))
    assert result.satisfiable
    assert result.coloring.class_sizes() == (3, 3)


def test_k13_settled_by_preflight():
    result = solve(star_graph(3), SolveOptions(k=2))
    assert result.status is SolveStatus.UNSATISFIABLE
    assert result.stats.nodes == 0
    assert result.reason.startswith("global_divisibility")


def test_c9_three_colors():
    result = solve(cycle_graph(9), SolveOptions(k=3))
    assert result.satisfiable
    assert verify_cnbc(cycle_graph(9), result.coloring)


def test_c4_degree_failure_reported():
    result = solve(cycle_graph(4), SolveOptions(k=2))
    assert result.status is SolveStatus.UNSATISFIABLE
    assert "degree_cnbc" in result.reason
    assert result.preflight is not None


def test_neighborhood_size_check_without_preflight():
    result = solve(cycle_graph(4), SolveOptions(k=2, run_preflight=False))
    assert result.status is SolveStatus.UNSATISFIABLE
    assert result.preflight is None
    assert "not divisible" in result.reason


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("n", range(1, 13))
def test_complete_graphs(n, k):
    result = solve(complete_graph(n), SolveOptions(k=k))
    assert result.satisfiable == (n % k == 0)


def test_open_neighborhood_mode():
    options = SolveOptions(k=2, mode=BalanceMode.NBC)
    result = solve(cycle_graph(4), options)
    assert result.satisfiable
    assert verify(cycle_graph(4), result.coloring, BalanceMode.NBC)
    assert not solve(path_graph(3), options).satisfiable


def test_constructed_graphs_are_never_refuted():
    for colored in (color_hamming(3, 2), build_hk(2), build_hk(3), supergraph_embed(path_graph(3), 2).colored):
        result = solve(colored.graph, SolveOptions(k=colored.k, time_limit=60))
        assert result.status is not SolveStatus.UNSATISFIABLE


def test_brute_force_counts():
    assert len(brute_force(complete_graph(4), 2)) == 6
    assert brute_force(complete_bipartite_graph(3, 3), 2) == []
    assert brute_force(complete_graph(1), 2) == []
    found = brute_force(complete_graph(2), 2)
    assert [c.colors for c in found] == [(1, 2), (2, 1)]


def test_brute_force_budget():
    with pytest.raises(BudgetExceededError):
        brute_force(empty_graph(10), 2, budget=1000)


def test_brute_force_nbc():
    assert all(verify(cycle_graph(4), c, "nbc") for c in brute_force(cycle_graph(4), 2, "nbc"))
    assert len(brute_force(empty_graph(3), 2, BalanceMode.NBC)) == 8


def test_find_proper_coloring():
    assert find_proper_coloring(cycle_graph(5), 2) is None
    coloring = find_proper_coloring(cycle_graph(5), 3)
    assert all(coloring[u] != coloring[v] for u, v in cycle_graph(5).edges())
    assert find_proper_coloring(complete_graph(4), 3) is None
    with pytest.raises(SolverError):
        find_proper_coloring(cycle_graph(5), 1)


def test_option_validation():
    with pytest.raises(ValidationError):
        SolveOptions(k=1)
    with pytest.raises(ValidationError):
        SolveOptions(k=2, time_limit=0)
    with pytest.raises(ValidationError):
        SolveOptions(k=2, workers=0)
    with pytest.raises(ValidationError):
        SolveOptions(k=2, vertex_order=VertexOrder.CUSTOM)
    with pytest.raises(ValidationError):
        SolveOptions(k=2, custom_order=(0, 1))


def test_custom_order():
    options = SolveOptions(k=2, vertex_order=VertexOrder.CUSTOM, custom_order=(5, 4, 3, 2, 1, 0))
    assert solve(complete_graph(6), options).satisfiable
    bad = SolveOptions(k=2, vertex_order=VertexOrder.CUSTOM, custom_order=(0, 1, 2))
    with pytest.raises(SolverError):
        solve(complete_graph(6), bad)


def test_registered_cliques_are_validated():
    options = SolveOptions(k=2, propagation=frozenset(Propagation), rainbow_cliques=((0, 1),))
    with pytest.raises(SolverError):
        solve(complete_graph(4), options)
    nbc = SolveOptions(k=2, mode=BalanceMode.NBC, propagation=frozenset(Propagation), rainbow_cliques=((0, 1),))
    with pytest.raises(SolverError):
        solve(cycle_graph(4), nbc)
    valid = SolveOptions(k=2, propagation=frozenset(Propagation), rainbow_cliques=((0, 1), (2, 3)))
    assert solve(Graph(4, [(0, 1), (2, 3)]), valid).satisfiable


def test_timeout():
    reduced, _ = build_reduction(complete_graph(4), 3)
    # Branch on the padding first so that the contradiction at the originals is found late
    late = tuple(reversed(range(reduced.vertex_count)))
    options = SolveOptions(
        k=3,
        propagation=frozenset(),
        symmetry_breaking=False,
        vertex_order=VertexOrder.CUSTOM,
        custom_order=late,
        time_limit=1e-6,
    )
    result = solve(reduced, options)
    assert result.status is SolveStatus.TIMEOUT
    assert result.coloring is None
    assert result.stats.nodes >= solver_module.CLOCK_INTERVAL


def test_deterministic():
    graph = color_hamming(3, 2).graph
    first = solve(graph, SolveOptions(k=2))
    second = solve(graph, SolveOptions(k=2))
    assert first.coloring == second.coloring
    assert first.stats.nodes == second.stats.nodes


ABLATIONS = [
    {"symmetry_breaking": False},
    {"propagation": frozenset()},
    {"propagation": frozenset({Propagation.COUNT_BOUNDS})},
    {"propagation": frozenset({Propagation.TWIN_MERGE})},
    {"run_preflight": False},
    {"vertex_order": VertexOrder.INPUT},
]


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=7))
def test_ablations_do_not_change_the_answer(graph):
    baseline = solve(graph, SolveOptions(k=2)).status
    for change in ABLATIONS:
        assert solve(graph, SolveOptions(k=2, **change)).status is baseline, change


def test_parallel_matches_sequential():
    for graph in (complete_graph(6), cycle_graph(9), star_graph(5), color_hamming(3, 2).graph):
        for k in (2, 3):
            sequential = solve(graph, SolveOptions(k=k))
            parallel = solve(graph, SolveOptions(k=k, workers=2))
            assert parallel.status is sequential.status
            assert parallel.coloring == sequential.coloring


def test_exhaustive_agreement_two_colors_small():
    report = cross_validate(small_graphs(5), 2)
    assert report.agreed
    assert report.checked == 53
    assert report.timeouts == 0
    assert report.satisfiable > 0


@pytest.mark.slow
@pytest.mark.parametrize("k,max_vertices", [(2, 6), (3, 5)])
def test_exhaustive_agreement(k, max_vertices):
    report = cross_validate(small_graphs(max_vertices), k)
    assert report.agreed
    assert report.timeouts == 0


@pytest.mark.slow
def test_exhaustive_agreement_open_neighborhoods():
    report = cross_validate(small_graphs(5), 2, BalanceMode.NBC)
    assert report.agreed


def test_disagreements_are_minimized(monkeypatch):
    def always_unsat(graph, options):
        return SolveResult(SolveStatus.UNSATISFIABLE)

    monkeypatch.setattr(solver_module, "solve", always_unsat)
    report = cross_validate([empty_graph(4)], 2, BalanceMode.NBC)
    assert not report.agreed
    disagreement = report.disagreements[0]
    assert disagreement.original == empty_graph(4)
    assert disagreement.graph == empty_graph(1)
    assert disagreement.solver_status is SolveStatus.UNSATISFIABLE
    assert disagreement.oracle_count == 16


def test_parallel_timeout_honors_the_limit():
    reduced, _ = build_reduction(complete_graph(4), 3)
    options = SolveOptions(
        k=3,
        propagation=frozenset(),
        symmetry_breaking=False,
        vertex_order=VertexOrder.CUSTOM,
        custom_order=tuple(reversed(range(reduced.vertex_count))),
        time_limit=1.0,
        workers=4,
    )
    started = time.perf_counter()
    result = solve(reduced, options)
    elapsed = time.perf_counter() - started
    assert result.status is SolveStatus.TIMEOUT
    assert elapsed < 1.75


def test_parallel_counts_the_frontier_nodes():
    reduced, _ = build_reduction(complete_graph(4), 3)
    for graph, k in ((star_graph(5), 2), (reduced, 3)):
        sequential = solve(graph, SolveOptions(k=k, run_preflight=False))
        parallel = solve(graph, SolveOptions(k=k, run_preflight=False, workers=2))
        assert sequential.status is parallel.status is SolveStatus.UNSATISFIABLE
        assert parallel.stats.nodes == sequential.stats.nodes > 0
    for graph in (complete_graph(6), color_hamming(3, 2).graph):
        sequential = solve(graph, SolveOptions(k=2))
        parallel = solve(graph, SolveOptions(k=2, workers=2))
        assert parallel.stats.nodes >= sequential.stats.nodes


@pytest.mark.parametrize("max_vertices", [6, pytest.param(7, marks=pytest.mark.slow)])
@pytest.mark.parametrize("k", [2, 3])
def test_twin_classes_are_monochromatic(max_vertices, k):
    unmerged_options = SolveOptions(k=k, propagation=frozenset({Propagation.COUNT_BOUNDS}))
    for graph in small_graphs(max_vertices):
        unmerged = solve(graph, unmerged_options)
        merged = solve(graph, SolveOptions(k=k))
        assert merged.status is unmerged.status, graph
        if not unmerged.satisfiable:
            continue
        assert verify_cnbc(graph, merged.coloring)
        for twins in twin_partition(graph):
            assert len({unmerged.coloring[v] for v in twins}) == 1, (graph, twins)


def _forced_rainbows(graph, k):
    hoods = {tuple(graph.closed_neighborhood(w)) for w in graph.vertices()}
    return tuple(sorted(hood for hood in hoods if len(hood) == k))


@pytest.mark.parametrize("symmetry_breaking", [True, False])
@pytest.mark.parametrize("k", [2, 3])
def test_rainbow_cliques_agree_with_brute_force(k, symmetry_breaking):
    registered = 0
    for graph in small_graphs(6):
        cliques = _forced_rainbows(graph, k)
        registered += bool(cliques)
        options = SolveOptions(
            k=k,
            propagation=frozenset(Propagation),
            rainbow_cliques=cliques,
            symmetry_breaking=symmetry_breaking,
        )
        result = solve(graph, options)
        assert result.satisfiable == bool(brute_force(graph, k)), graph
    assert registered > 0
