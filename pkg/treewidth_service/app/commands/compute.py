"""
`compute` 명령: 텐서 파일의 정확한 perm / det / disc / hyperdet / mdperm
"""

import argparse
import time

from app.commands.common import (
    GRAPH_CHOICES,
    add_heuristic_argument,
    check_oracle,
    read_text,
    write_stats,
)
from app.modules.engines.dispatcher import ENGINES, FUNCTIONS, DecompositionSource, compute, reference_value
from app.modules.graphs.graphs import graph_for
from app.modules.shared.errors import ParameterError
from app.modules.shared.logger import get_cli_logger
from app.modules.tensor_model.tensor import format_scalar
from app.modules.tensor_model.tensor_io import parse_tensor
from app.modules.treedecomp.td_io import read_decomposition
from app.schemas.report_schemas import EngineStatsReport, RunReport, create_run_report

logger = get_cli_logger()


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("compute", help="evaluate a function of a sparse tensor")
    parser.add_argument("--fn", required=True, choices=FUNCTIONS, help="function to evaluate")
    parser.add_argument("--input", required=True, help="tensor file")
    parser.add_argument("--td", help="tree decomposition file (.td)")
    parser.add_argument(
        "--td-graph",
        choices=sorted(GRAPH_CHOICES),
        default="bipartite",
        help="graph the --td file decomposes",
    )
    parser.add_argument("--engine", choices=ENGINES, default="auto")
    add_heuristic_argument(parser)
    parser.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")
    parser.add_argument("--stats", help="write the stats JSON to this file")
    parser.set_defaults(handler=cmd_compute)


def cmd_compute(args: argparse.Namespace) -> RunReport:
    """
    compute --fn F --input FILE [--td FILE --td-graph G] [--heuristic H] [--oracle] [--stats FILE]

    정확한 값을 stdout 에 출력 (--oracle 이면 `oracle: match` 도).
    """
    started = time.perf_counter()
    text = read_text(args.input)
    tensor = parse_tensor(text)

    if args.td:
        kind = GRAPH_CHOICES[args.td_graph]
        try:
            graph = graph_for(tensor, kind)
        except ValueError as e:
            raise ParameterError(str(e)) from e
        td = read_decomposition(read_text(args.td), graph.layout, kind)
        source = DecompositionSource.supplied(td, kind, engine=args.engine)
    else:
        source = DecompositionSource.heuristic(args.heuristic, engine=args.engine)

    result = compute(args.fn, tensor, source, threads=args.threads)
    print(format_scalar(result.value))

    oracle = None
    if args.oracle:
        oracle = check_oracle(args.fn, result.value, reference_value(args.fn, tensor), text)

    stats = result.stats_dict()
    write_stats(args.stats, EngineStatsReport(**stats))
    logger.info(
        "compute finished",
        function=args.fn,
        engine=result.engine,
        short_circuit=result.short_circuit,
        ring_mults=result.stats.ring_mults,
    )
    return create_run_report(
        command=args.argv,
        function=args.fn,
        result=stats["result"],
        wall_time=time.perf_counter() - started,
        stats={
            "width_single_part": result.stats.width_single_part,
            "width_multi_part": result.stats.width_multi_part,
            "nodes": result.stats.nodes,
            "ring_mults": result.stats.ring_mults,
        },
        input_text=text,
        oracle=oracle,
    )
