"""
Corpus store utilities for Balanced Coloring
"""

import json
import logging
from typing import Optional

from sqlalchemy import select
from sqlalchemy.orm import Session

from balanced_coloring.constructors import ColoredGraph, Provenance
from balanced_coloring.coloring import verify
from balanced_coloring.errors import ContractViolation
from balanced_coloring.models.certified_coloring import CertifiedColoring
from balanced_coloring.models.graph import Graph
from balanced_coloring.models.coloring import Coloring
from balanced_coloring.models.solve_run import SolveRun
from balanced_coloring.solver import SolveOptions, SolveResult
from balanced_coloring.utils.graph_io import format_edge_list, graph_digest, parse_edge_list

logger = logging.getLogger(__name__)


def _join(values) -> str:
    return ",".join(str(value) for value in values)


def save_colored_graph(session: Session, colored: ColoredGraph) -> CertifiedColoring:
    """Insert a certified coloring after verifying it once more."""
    verdict = verify(colored.graph, colored.coloring, colored.mode)
    if not verdict:
        raise ContractViolation("refusing to store an unbalanced coloring (vertex " + str(verdict.vertex) + ")")
    row = CertifiedColoring(
        construction=colored.provenance.construction,
        parameters=json.dumps(colored.provenance.parameters, sort_keys=True, default=str),
        mode=colored.mode.value,
        k=colored.k,
        vertex_count=colored.graph.vertex_count,
        edge_count=colored.graph.edge_count,
        graph_digest=graph_digest(colored.graph),
        edge_list=format_edge_list(colored.graph),
        colors=_join(colored.coloring.colors),
        class_sizes=_join(colored.coloring.class_sizes()),
    )
    session.add(row)
    session.commit()
    session.refresh(row)
    logger.info("Stored %r", row)
    return row


def load_colored_graph(row: CertifiedColoring) -> ColoredGraph:
    """Rebuild a stored coloring; the graph digest and the balance are both re-checked."""
    graph = parse_edge_list(row.edge_list)
    if graph_digest(graph) != row.graph_digest:
        raise ContractViolation("stored graph " + str(row.id) + " does not match its digest")
    coloring = Coloring(row.k, tuple(row.color_list))
    provenance = Provenance(row.construction, row.parameter_dict)
    return ColoredGraph.certify(graph, coloring, row.mode, provenance)


def list_certified(
    session: Session, k: Optional[int] = None, construction: Optional[str] = None
) -> list[CertifiedColoring]:
    query = select(CertifiedColoring).order_by(CertifiedColoring.id)
    if k is not None:
        query = query.where(CertifiedColoring.k == k)
    if construction is not None:
        query = query.where(CertifiedColoring.construction == construction)
    return list(session.execute(query).scalars().all())


def record_solve_run(session: Session, graph: Graph, options: SolveOptions, result: SolveResult) -> SolveRun:
    run = SolveRun(
        graph_digest=graph_digest(graph),
        vertex_count=graph.vertex_count,
        edge_count=graph.edge_count,
        k=options.k,
        mode=options.mode.value,
        status=result.status.value,
        nodes=result.stats.nodes,
        max_depth=result.stats.max_depth,
        wall_time=result.stats.wall_time,
    )
    session.add(run)
    session.commit()
    session.refresh(run)
    return run
