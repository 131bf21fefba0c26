"""
`mvol` 명령: 조노토프 파일의 정확한 혼합 부피
"""

import argparse
import time

from app.commands.common import add_heuristic_argument, check_oracle, read_text, write_stats
from app.modules.graphs.graphs import GraphKind
from app.modules.oracle.oracle import naive_mixed_volume
from app.modules.shared.logger import get_cli_logger
from app.modules.tensor_model.tensor import format_scalar
from app.modules.treedecomp.td_io import read_decomposition
from app.modules.zonotopes.zonotope_io import parse_zonotopes
from app.modules.zonotopes.zonotopes import edge_graph, mixed_volume_with_stats
from app.schemas.report_schemas import RunReport, create_run_report

logger = get_cli_logger()


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("mvol", help="mixed volume of zonotopes with few edge directions")
    parser.add_argument("--input", required=True, help="zonotope file")
    parser.add_argument("--td", help="tree decomposition of the edge graph (.td)")
    add_heuristic_argument(parser)
    parser.add_argument(
        "--max-extra-directions",
        type=int,
        default=None,
        help="cap on |U| - n (overrides TWPERM_MAX_EXTRA_DIRECTIONS)",
    )
    parser.add_argument("--oracle", action="store_true", help="cross-check against the naive formula")
    parser.add_argument("--stats", help="write the stats JSON to this file")
    parser.set_defaults(handler=cmd_mvol)


def cmd_mvol(args: argparse.Namespace) -> RunReport:
    started = time.perf_counter()
    text = read_text(args.input)
    system = parse_zonotopes(text)

    td = None
    if args.td:
        td = read_decomposition(read_text(args.td), edge_graph(system).layout, GraphKind.EDGE)

    value, stats = mixed_volume_with_stats(
        system,
        decomposition=td,
        method=args.heuristic,
        max_extra_directions=args.max_extra_directions,
        threads=args.threads,
    )
    print(format_scalar(value))

    oracle = None
    if args.oracle:
        oracle = check_oracle("mvol", value, naive_mixed_volume(system), text)

    logger.info("mvol finished", n=system.n, ring_mults=stats.ring_mults)
    report = create_run_report(
        command=args.argv,
        function="mvol",
        result=format_scalar(value),
        wall_time=time.perf_counter() - started,
        stats={
            "width_single_part": stats.width_single_part,
            "width_multi_part": stats.width_multi_part,
            "nodes": stats.nodes,
            "ring_mults": stats.ring_mults,
        },
        input_text=text,
        oracle=oracle,
    )
    write_stats(args.stats, report.stats(system.n, 2))
    return report
