import pytest

from balanced_coloring.constructors import color_complete, color_hamming
from balanced_coloring.errors import ContractViolation, HypothesisError
from balanced_coloring.graphs import hamming_graph
from balanced_coloring.models import CertifiedColoring, SolveRun
from balanced_coloring.schemas import CertifiedColoringResponse
from balanced_coloring.solver import SolveOptions, solve
from balanced_coloring.utils.corpus_store import (
    list_certified,
    load_colored_graph,
    record_solve_run,
    save_colored_graph,
)


def test_save_and_load(session):
    colored = color_hamming(3, 2)
    row = save_colored_graph(session, colored)
    assert row.id is not None
    assert row.class_sizes == "4,4"
    assert row.parameter_dict == {"d": 3, "k": 2}

    loaded = load_colored_graph(row)
    assert loaded.graph == colored.graph
    assert loaded.coloring == colored.coloring
    assert loaded.provenance == colored.provenance


def test_list_filters(session):
    save_colored_graph(session, color_hamming(3, 2))
    save_colored_graph(session, color_complete(6, 3))
    save_colored_graph(session, color_complete(4, 2))
    assert [row.construction for row in list_certified(session)] == ["hamming", "complete", "complete"]
    assert len(list_certified(session, k=2)) == 2
    assert [row.k for row in list_certified(session, construction="complete")] == [3, 2]


def test_rows_are_reverified_on_load(session):
    row = save_colored_graph(session, color_complete(4, 2))
    row.colors = "1,1,2,2"
    assert load_colored_graph(row).coloring.colors == (1, 1, 2, 2)
    row.colors = "1,1,1,2"
    with pytest.raises(HypothesisError):
        load_colored_graph(row)


def test_digest_mismatch_is_detected(session):
    row = save_colored_graph(session, color_complete(4, 2))
    row.edge_list = "# vertices 4\n0 1\n2 3\n"
    with pytest.raises(ContractViolation):
        load_colored_graph(row)


def test_record_solve_run(session):
    graph = hamming_graph(3, 2)
    options = SolveOptions(k=2)
    run = record_solve_run(session, graph, options, solve(graph, options))
    assert run.status == "satisfiable"
    assert session.query(SolveRun).count() == 1
    assert "satisfiable" in repr(run)


def test_response_from_row(session):
    row = save_colored_graph(session, color_complete(6, 2))
    response = CertifiedColoringResponse.model_validate(row)
    assert response.vertex_count == 6
    assert response.class_sizes == "3,3"
    assert session.get(CertifiedColoring, row.id) is row
