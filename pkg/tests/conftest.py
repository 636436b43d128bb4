"""
Shared fixtures for the Balanced Coloring test suite.
"""

import itertools

import pytest

from balanced_coloring.constructors import (
    ColoredGraph,
    build_hk,
    color_complete,
    color_hamming,
    color_hamming_closed_form,
    iterate_vertex_addition,
    supergraph_embed,
)
from balanced_coloring.database import create_store_engine, get_database, init_database
from balanced_coloring.graphs import complete_graph, cycle_graph, path_graph, small_graphs, star_graph
from balanced_coloring.models.coloring import BalanceMode
from balanced_coloring.solver import brute_force
from balanced_coloring.transfer import (
    direct_k2_transfer,
    join_transfer,
    lexicographic_transfer,
    strong_product_transfer,
)
from balanced_coloring.utils.graph_io import write_graph


@pytest.fixture
def k6() -> ColoredGraph:
    return color_complete(6, 2)


@pytest.fixture
def rainbow_k2() -> ColoredGraph:
    return color_complete(2, 2)


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph to a file under tmp_path and return the path as a string."""
    counter = itertools.count()

    def write(graph, suffix: str = ".edges") -> str:
        path = tmp_path / ("graph" + str(next(counter)) + suffix)
        write_graph(graph, path)
        return str(path)

    return write


@pytest.fixture
def session():
    engine = create_store_engine("sqlite://")
    init_database(engine)
    with get_database(engine) as db:
        yield db


@pytest.fixture(scope="session")
def certified_corpus() -> list[ColoredGraph]:
    """Constructions, transfers and exhaustively found colorings, all certified."""
    corpus = []
    for n in range(2, 13):
        for k in (2, 3, 4):
            if n % k == 0:
                corpus.append(color_complete(n, k))
    for d, k in ((3, 2), (5, 2), (4, 3)):
        corpus.append(color_hamming(d, k))
        corpus.append(color_hamming_closed_form(d, k))
    for k in range(2, 7):
        corpus.append(build_hk(k))
    for rounds in (1, 2, 3):
        corpus.append(iterate_vertex_addition(build_hk(2), 0, rounds))
    corpus.append(iterate_vertex_addition(build_hk(3), 0, 3))
    for graph in (path_graph(3), cycle_graph(4), cycle_graph(5), star_graph(3), complete_graph(4), cycle_graph(6)):
        for k in (2, 3):
            corpus.append(supergraph_embed(graph, k).colored)

    k2 = color_complete(2, 2)
    k6 = color_complete(6, 2)
    corpus.append(strong_product_transfer(k2, path_graph(3)))
    corpus.append(strong_product_transfer(k6, cycle_graph(4)))
    corpus.append(direct_k2_transfer(k6))
    corpus.append(join_transfer(color_hamming(3, 2), k6))
    corpus.append(lexicographic_transfer(cycle_graph(5), color_complete(3, 3)))

    for graph in small_graphs(6):
        found = brute_force(graph, 2, BalanceMode.CNBC)
        if found:
            corpus.append(ColoredGraph(graph, found[0]))
    return corpus
