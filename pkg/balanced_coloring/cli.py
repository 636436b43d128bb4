"""
Command-line interface for Balanced Coloring.

JSON results go to stdout and human-readable diagnostics to stderr. Exit
codes: 0 success or satisfiable, 1 unsatisfiable or failed check, 2 usage
error, 124 solver timeout.
"""

import argparse
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from balanced_coloring import __version__
from balanced_coloring.coloring import class_stats, verify
from balanced_coloring.config import get_settings
from balanced_coloring.constructors import (
    ColoredGraph,
    Provenance,
    build_hk,
    color_complete,
    color_hamming,
    color_hamming_closed_form,
    iterate_vertex_addition,
    supergraph_embed,
)
from balanced_coloring.database import create_store_engine, get_database, init_database
from balanced_coloring.diagnostics import (
    NECESSARY_CHECKS,
    Verdict,
    check_counting,
    check_regular_counting,
    preflight,
)
from balanced_coloring.errors import BalancedColoringError
from balanced_coloring.models.coloring import BalanceMode
from balanced_coloring.reduction import (
    ReductionCertificate,
    build_reduction,
    drop_isolated,
    equivalence_check,
    lift_coloring,
)
from balanced_coloring.schemas import (
    BalanceVerdictResponse,
    CertifiedColoringResponse,
    CheckResultResponse,
    ClassStatsResponse,
    ColoredGraphResponse,
    DiagnosticsResponse,
    EquivalenceReportResponse,
    ObstructionResponse,
    ReductionCertificateFile,
    ReductionResponse,
    SearchStatsResponse,
    SolveResultResponse,
)
from balanced_coloring.solver import (
    Propagation,
    SolveOptions,
    SolveStatus,
    VertexOrder,
    solve,
)
from balanced_coloring.transfer import (
    TransferKind,
    TransferRequest,
    direct_product_obstruction,
    run_transfer,
)
from balanced_coloring.utils.coloring_io import read_coloring, write_coloring
from balanced_coloring.utils.corpus_store import (
    list_certified,
    record_solve_run,
    save_colored_graph,
)
from balanced_coloring.utils.graph_io import GraphFormat, read_graph, write_graph

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 124

OBSTRUCTION_KIND = "direct_obstruction"

stderr = Console(stderr=True)


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else get_settings().log_level
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=stderr, show_path=False)],
        force=True,
    )


def emit(model: BaseModel) -> None:
    print(model.model_dump_json(indent=2))


@contextmanager
def store_session(args: argparse.Namespace) -> Iterator:
    """A corpus store session when ``--database`` or ``--store`` is given, else None."""
    if args.database is None and not args.store:
        yield None
        return
    engine = create_store_engine(args.database)
    init_database(engine)
    with get_database(engine) as session:
        yield session


# ----------------------------------------------------------------------
# Shared helpers
# ----------------------------------------------------------------------

def _load_colored(graph_path: str, coloring_path: str, mode: str) -> ColoredGraph:
    graph = read_graph(graph_path)
    coloring = read_coloring(coloring_path)
    return ColoredGraph.certify(graph, coloring, mode, Provenance("input", {"graph": Path(graph_path).name}))


def _write_colored(colored: ColoredGraph, prefix: Optional[str], graph_format: str) -> tuple[Optional[str], Optional[str]]:
    if prefix is None:
        return None, None
    suffix = ".col" if GraphFormat(graph_format) is GraphFormat.DIMACS else ".edges"
    graph_path = prefix + suffix
    coloring_path = prefix + ".json"
    write_graph(colored.graph, graph_path)
    write_coloring(colored.coloring, coloring_path)
    return graph_path, coloring_path


def _colored_response(colored: ColoredGraph, args: argparse.Namespace, session,
                      embedding: Optional[tuple[int, ...]] = None) -> ColoredGraphResponse:
    graph_path, coloring_path = _write_colored(colored, args.out, args.graph_format)
    if session is not None:
        save_colored_graph(session, colored)
    return ColoredGraphResponse(
        construction=colored.provenance.construction,
        parameters=colored.provenance.parameters,
        mode=colored.mode.value,
        k=colored.k,
        vertex_count=colored.graph.vertex_count,
        edge_count=colored.graph.edge_count,
        class_sizes=list(colored.coloring.class_sizes()),
        graph_path=graph_path,
        coloring_path=coloring_path,
        embedding=None if embedding is None else list(embedding),
    )


def _show_checks(title: str, checks) -> None:
    table = Table(title=title)
    table.add_column("check")
    table.add_column("status")
    table.add_column("detail")
    for check in checks:
        style = {"pass": "green", "fail": "red"}.get(check.status.value, "yellow")
        table.add_row(check.name, "[" + style + "]" + check.status.value + "[/]", escape(check.detail))
    stderr.print(table)


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    report = preflight(graph, args.k, args.disable)
    _show_checks("Necessary conditions for k=" + str(args.k), report.checks)
    emit(DiagnosticsResponse.from_report(report))
    return EXIT_NEGATIVE if report.verdict is Verdict.DEFINITELY_NOT_CNBC else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    coloring = read_coloring(args.coloring)
    verdict = verify(graph, coloring, args.mode)
    if not verdict:
        stderr.print("[red]vertex " + str(verdict.vertex) + " is unbalanced: " + str(verdict.counts) + "[/]")
    emit(BalanceVerdictResponse.from_verdict(verdict))
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _solve_options(args: argparse.Namespace) -> SolveOptions:
    propagation = set(Propagation)
    if args.no_count_bounds:
        propagation.discard(Propagation.COUNT_BOUNDS)
    if args.no_twin_merge:
        propagation.discard(Propagation.TWIN_MERGE)
    custom = None
    if args.custom_order is not None:
        custom = tuple(int(v) for v in args.custom_order.split(","))
    return SolveOptions(
        k=args.k,
        mode=args.mode,
        symmetry_breaking=not args.no_symmetry_breaking,
        propagation=frozenset(propagation),
        time_limit=args.time_limit,
        vertex_order=VertexOrder.CUSTOM if custom is not None else args.order,
        custom_order=custom,
        run_preflight=not args.no_preflight,
        disabled_checks=tuple(args.disable),
        workers=args.workers,
    )


def cmd_solve(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    options = _solve_options(args)
    result = solve(graph, options)
    response = SolveResultResponse(
        status=result.status.value,
        k=options.k,
        mode=options.mode.value,
        coloring=None if result.coloring is None else list(result.coloring.colors),
        reason=result.reason,
        stats=SearchStatsResponse(
            nodes=result.stats.nodes,
            max_depth=result.stats.max_depth,
            wall_time=result.stats.wall_time if args.timings else None,
        ),
        preflight=None if result.preflight is None else DiagnosticsResponse.from_report(result.preflight),
    )
    if result.satisfiable and args.out:
        write_coloring(result.coloring, args.out)

    with store_session(args) as session:
        if session is not None:
            record_solve_run(session, graph, options, result)
            if result.satisfiable:
                save_colored_graph(session, ColoredGraph(
                    graph, result.coloring, Provenance("solve", {"k": options.k}), options.mode
                ))

    stderr.print("[bold]" + result.status.value + "[/] after " + str(result.stats.nodes) + " nodes")
    emit(response)
    return {
        SolveStatus.SATISFIABLE: EXIT_OK,
        SolveStatus.UNSATISFIABLE: EXIT_NEGATIVE,
        SolveStatus.TIMEOUT: EXIT_TIMEOUT,
    }[result.status]


def cmd_construct(args: argparse.Namespace) -> int:
    embedding = None
    if args.construction == "complete":
        colored = color_complete(args.n, args.k)
    elif args.construction == "hamming":
        build = color_hamming_closed_form if args.closed_form else color_hamming
        colored = build(args.d, args.k)
    elif args.construction == "hk":
        colored = build_hk(args.k)
    elif args.construction == "supergraph":
        result = supergraph_embed(read_graph(args.graph), args.k)
        colored, embedding = result.colored, result.vertex_map
    else:
        base = _load_colored(args.graph, args.coloring, BalanceMode.CNBC)
        colored = iterate_vertex_addition(base, args.z, args.rounds)

    with store_session(args) as session:
        emit(_colored_response(colored, args, session, embedding))
    return EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    if args.kind == OBSTRUCTION_KIND:
        if args.factor is None or args.k is None:
            raise BalancedColoringError("the direct product obstruction needs --factor and --k")
        obstruction = direct_product_obstruction(read_graph(args.graph), read_graph(args.factor), args.k)
        emit(ObstructionResponse(
            k=obstruction.k,
            left_degree=obstruction.left_degree,
            right_degree=obstruction.right_degree,
            product_degree=obstruction.product_degree,
            residue=obstruction.residue,
            vertex=list(obstruction.vertex),
        ))
        return EXIT_OK

    if args.coloring is None:
        raise BalancedColoringError("the " + args.kind + " transfer needs --coloring")
    colored = _load_colored(args.graph, args.coloring, args.mode)
    other = None
    if args.other_graph is not None:
        if args.other_coloring is None:
            raise BalancedColoringError("--other-graph needs --other-coloring")
        other = _load_colored(args.other_graph, args.other_coloring, args.other_mode)
    factor = read_graph(args.factor) if args.factor is not None else None

    request = TransferRequest(TransferKind(args.kind), colored, other, factor, args.p)
    result = run_transfer(request)
    with store_session(args) as session:
        emit(_colored_response(result, args, session))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    proper = read_coloring(args.coloring) if args.coloring is not None else None
    dropped: list[int] = []
    if args.drop_isolated:
        dropped = graph.isolated_vertices()
        graph, kept = drop_isolated(graph)
        if proper is not None:
            proper = proper.restrict(kept)

    reduced, certificate = build_reduction(graph, args.k)
    graph_path = args.out + ".edges"
    certificate_path = args.out + ".cert.json"
    write_graph(reduced, graph_path)
    Path(certificate_path).write_text(
        ReductionCertificateFile.from_certificate(certificate).model_dump_json(indent=2) + "\n"
    )
    lifted_path = None
    if proper is not None:
        lifted_path = args.out + ".lifted.json"
        write_coloring(lift_coloring(graph, args.k, proper, certificate), lifted_path)

    equivalence = None
    if args.equivalence:
        report = equivalence_check(graph, args.k, args.time_limit)
        equivalence = EquivalenceReportResponse(
            k=report.k,
            reduced_order=report.reduced_order,
            colorable=report.colorable,
            status=report.status.value,
            agreement=report.agreement,
            nodes=report.nodes,
            extracted=None if report.extracted is None else list(report.extracted.colors),
        )

    emit(ReductionResponse(
        k=args.k,
        original_order=graph.vertex_count,
        reduced_order=reduced.vertex_count,
        expected_order=ReductionCertificate.expected_order(graph, args.k),
        graph_path=graph_path,
        certificate_path=certificate_path,
        lifted_coloring_path=lifted_path,
        dropped_isolated=dropped,
        equivalence=equivalence,
    ))
    return EXIT_NEGATIVE if equivalence is not None and equivalence.agreement is False else EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    coloring = read_coloring(args.coloring)
    stats = class_stats(graph, coloring)
    identities = []
    if verify(graph, coloring, BalanceMode.CNBC):
        identities = check_counting(graph, coloring)
        if graph.regular_degree() is not None:
            identities += check_regular_counting(graph, coloring)
        _show_checks("Counting identities", identities)

    k = coloring.k
    table = Table(title="Color classes")
    table.add_column("class")
    table.add_column("size")
    table.add_column("internal edges")
    for i in range(1, k + 1):
        table.add_row("V_" + str(i), str(stats.sizes[i - 1]), str(stats.intra(i)))
    stderr.print(table)

    emit(ClassStatsResponse(
        k=k,
        sizes=list(stats.sizes),
        intra_edges=[stats.intra(i) for i in range(1, k + 1)],
        cross_edges={
            str(i) + "," + str(j): stats.between(i, j)
            for i in range(1, k + 1) for j in range(i + 1, k + 1)
        },
        identities=[CheckResultResponse.from_check(check) for check in identities],
    ))
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    engine = create_store_engine(args.database)
    init_database(engine)
    with get_database(engine) as session:
        rows = list_certified(session, args.k, args.construction)
        for row in rows:
            print(CertifiedColoringResponse.model_validate(row).model_dump_json())
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _positive_float(value: str) -> float:
    number = float(value)
    if number <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balanced-coloring",
        description="Closed-neighborhood balanced colorings: checks, search, constructions and reductions.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    parser.add_argument("--database", default=None, help="record results in this SQLAlchemy database URL")
    parser.add_argument("--store", action="store_true", help="record results in the configured database")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="run the necessary conditions for a CNBC k-coloring")
    check.add_argument("graph")
    check.add_argument("--k", type=int, required=True)
    check.add_argument("--disable", action="append", default=[], choices=NECESSARY_CHECKS)
    check.set_defaults(handler=cmd_check)

    verify_parser = commands.add_parser("verify", help="verify a coloring")
    verify_parser.add_argument("graph")
    verify_parser.add_argument("coloring")
    verify_parser.add_argument("--mode", choices=[m.value for m in BalanceMode], default="cnbc")
    verify_parser.set_defaults(handler=cmd_verify)

    solve_parser = commands.add_parser("solve", help="search for a balanced k-coloring")
    solve_parser.add_argument("graph")
    solve_parser.add_argument("--k", type=int, required=True)
    solve_parser.add_argument("--mode", choices=[m.value for m in BalanceMode], default="cnbc")
    solve_parser.add_argument("--time-limit", type=_positive_float, default=None, help="seconds")
    solve_parser.add_argument("--order", choices=[VertexOrder.DEGREE_DESC.value, VertexOrder.INPUT.value],
                              default=VertexOrder.DEGREE_DESC.value)
    solve_parser.add_argument("--custom-order", default=None, help="comma-separated vertex order")
    solve_parser.add_argument("--no-symmetry-breaking", action="store_true")
    solve_parser.add_argument("--no-count-bounds", action="store_true")
    solve_parser.add_argument("--no-twin-merge", action="store_true")
    solve_parser.add_argument("--no-preflight", action="store_true")
    solve_parser.add_argument("--disable", action="append", default=[], choices=NECESSARY_CHECKS)
    solve_parser.add_argument("--workers", type=int, default=1)
    solve_parser.add_argument("--timings", action="store_true", help="include wall time in the JSON")
    solve_parser.add_argument("--out", default=None, help="write the coloring here when satisfiable")
    solve_parser.set_defaults(handler=cmd_solve)

    construct = commands.add_parser("construct", help="build a certified CNBC-colored graph")
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", default=None, help="prefix for the graph and coloring files")
    output.add_argument("--graph-format", choices=[f.value for f in GraphFormat], default="edges")
    constructions = construct.add_subparsers(dest="construction", required=True)
    complete = constructions.add_parser("complete", parents=[output])
    complete.add_argument("--n", type=int, required=True)
    complete.add_argument("--k", type=int, required=True)
    hamming = constructions.add_parser("hamming", parents=[output])
    hamming.add_argument("--d", type=int, required=True)
    hamming.add_argument("--k", type=int, required=True)
    hamming.add_argument("--closed-form", action="store_true")
    hk = constructions.add_parser("hk", parents=[output])
    hk.add_argument("--k", type=int, required=True)
    supergraph = constructions.add_parser("supergraph", parents=[output])
    supergraph.add_argument("graph")
    supergraph.add_argument("--k", type=int, required=True)
    addition = constructions.add_parser("addition", parents=[output])
    addition.add_argument("graph")
    addition.add_argument("coloring")
    addition.add_argument("--z", type=int, required=True)
    addition.add_argument("--rounds", type=int, default=1)
    construct.set_defaults(handler=cmd_construct)

    transform = commands.add_parser("transform", help="transfer a coloring through a graph operation")
    transform.add_argument("--kind", required=True, choices=[t.value for t in TransferKind] + [OBSTRUCTION_KIND])
    transform.add_argument("--graph", required=True)
    transform.add_argument("--coloring", default=None)
    transform.add_argument("--mode", choices=[m.value for m in BalanceMode], default="cnbc")
    transform.add_argument("--other-graph", default=None)
    transform.add_argument("--other-coloring", default=None)
    transform.add_argument("--other-mode", choices=[m.value for m in BalanceMode], default="cnbc")
    transform.add_argument("--factor", default=None, help="uncolored second graph")
    transform.add_argument("--p", type=int, default=None, help="target colors for reduce_colors")
    transform.add_argument("--k", type=int, default=None, help="k for the direct product obstruction")
    transform.add_argument("--out", default=None)
    transform.add_argument("--graph-format", choices=[f.value for f in GraphFormat], default="edges")
    transform.set_defaults(handler=cmd_transform)

    reduce_parser = commands.add_parser("reduce", help="reduce proper k-coloring of G to CNBC of G'")
    reduce_parser.add_argument("graph")
    reduce_parser.add_argument("--k", type=int, required=True)
    reduce_parser.add_argument("--out", required=True, help="prefix for G', its certificate and the lift")
    reduce_parser.add_argument("--coloring", default=None, help="proper coloring of G to lift")
    reduce_parser.add_argument("--drop-isolated", action="store_true")
    reduce_parser.add_argument("--equivalence", action="store_true", help="also compare both sides by search")
    reduce_parser.add_argument("--time-limit", type=_positive_float, default=None)
    reduce_parser.set_defaults(handler=cmd_reduce)

    stats = commands.add_parser("stats", help="color class statistics and counting identities")
    stats.add_argument("graph")
    stats.add_argument("coloring")
    stats.set_defaults(handler=cmd_stats)

    corpus = commands.add_parser("corpus", help="list stored certified colorings")
    corpus.add_argument("--k", type=int, default=None)
    corpus.add_argument("--construction", default=None)
    corpus.set_defaults(handler=cmd_corpus)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except BalancedColoringError as exc:
        stderr.print("[red]error:[/] " + escape(exc.detail))
        return exc.exit_code
    except ValidationError as exc:
        stderr.print("[red]invalid options:[/] " + escape(str(exc)))
        return EXIT_USAGE
