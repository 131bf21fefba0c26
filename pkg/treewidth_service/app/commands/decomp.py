"""
`decomp` 명령: 희소성 그래프와 휴리스틱 분해 내보내기
"""

import argparse
from pathlib import Path

from app.commands.common import GRAPH_CHOICES, add_heuristic_argument, read_text
from app.config.settings import settings
from app.modules.graphs.graphs import export_graph, graph_for
from app.modules.shared.errors import ParameterError
from app.modules.shared.logger import get_cli_logger
from app.modules.tensor_model.tensor_io import parse_tensor
from app.modules.treedecomp.heuristics import heuristic_decomposition
from app.modules.treedecomp.td_io import write_decomposition

logger = get_cli_logger()


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("decomp", help="write a sparsity graph and a heuristic decomposition")
    parser.add_argument("--input", required=True, help="tensor file")
    parser.add_argument("--graph", choices=sorted(GRAPH_CHOICES), default="bipartite")
    add_heuristic_argument(parser)
    parser.add_argument("--gr", help="write the graph in .gr format")
    parser.add_argument("--td", help="write the heuristic decomposition in .td format")
    parser.set_defaults(handler=cmd_decomp)


def cmd_decomp(args: argparse.Namespace) -> None:
    """휴리스틱 분해의 `width <single-part> <multi-part>` 출력"""
    tensor = parse_tensor(read_text(args.input))
    try:
        graph = graph_for(tensor, GRAPH_CHOICES[args.graph])
    except ValueError as e:
        raise ParameterError(str(e)) from e

    td = heuristic_decomposition(graph, args.heuristic or settings.DEFAULT_HEURISTIC)
    if args.gr:
        Path(args.gr).write_text(export_graph(graph), encoding="utf-8")
    if args.td:
        Path(args.td).write_text(write_decomposition(td, graph.layout), encoding="utf-8")

    print(f"width {td.width_single_part} {td.width_multi_part}")
    logger.info("Decomposition written", graph=args.graph, nodes=td.node_count, max_bag=td.max_bag_size)
