"""
`bench` 명령: 생성된 계열에서 ring 곱셈 수 스케일링 측정
"""

import argparse
import random
import time
from typing import List, Tuple

from tqdm import tqdm

from app.commands.common import add_heuristic_argument, parse_int_list
from app.config.settings import settings
from app.modules.engines.dispatcher import DecompositionSource, compute
from app.modules.generators.instances import band_decompositions, band_matrix
from app.modules.graphs.graphs import GraphKind
from app.modules.shared.errors import OracleMismatchError, ParameterError
from app.modules.shared.logger import get_cli_logger

logger = get_cli_logger()

MAX_DOUBLING_RATIO = 3.0


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="scaling benchmark on band matrices")
    parser.add_argument("--family", choices=("band",), default="band")
    parser.add_argument("--sizes", default="500,1000,2000", help="comma-separated sizes")
    parser.add_argument("--w1", type=int, default=1)
    parser.add_argument("--w2", type=int, default=1)
    parser.add_argument("--fn", choices=("perm", "det"), default="perm")
    parser.add_argument(
        "--decomposition",
        choices=("path", "heuristic"),
        default="path",
        help="explicit band path decomposition or the elimination heuristic",
    )
    add_heuristic_argument(parser)
    parser.add_argument("--seed", type=int, default=None)
    parser.set_defaults(handler=cmd_bench)


def doubling_ratios(rows: List[Tuple[int, int]]) -> List[Tuple[int, float]]:
    """두 배 크기도 측정된 모든 n 에 대한 (n, mults(2n) / mults(n))"""
    mults = dict(rows)
    return [(n, mults[2 * n] / mults[n]) for n in sorted(mults) if 2 * n in mults and mults[n]]


def cmd_bench(args: argparse.Namespace) -> List[Tuple[int, int]]:
    sizes = parse_int_list(args.sizes)
    if not sizes or min(sizes) < 1:
        raise ParameterError("--sizes needs positive integers")
    rng = random.Random(settings.RANDOM_SEED if args.seed is None else args.seed)

    rows: List[Tuple[int, int]] = []
    for n in tqdm(sizes, desc=f"bench {args.family}", disable=not settings.is_development):
        matrix = band_matrix(n, args.w1, args.w2, rng)
        if args.decomposition == "path":
            _, _, bipartite_td = band_decompositions(n, args.w1, args.w2)
            source = DecompositionSource.supplied(bipartite_td, GraphKind.BIPARTITE)
        else:
            source = DecompositionSource.heuristic(args.heuristic)

        started = time.perf_counter()
        result = compute(args.fn, matrix, source, threads=args.threads)
        elapsed = time.perf_counter() - started
        rows.append((n, result.stats.ring_mults))
        print(f"n={n} width={result.stats.width_multi_part} ring_mults={result.stats.ring_mults} wall={elapsed:.3f}s")

    for n, ratio in doubling_ratios(rows):
        print(f"ratio mults({2 * n})/mults({n}) = {ratio:.3f}")
        if ratio > MAX_DOUBLING_RATIO:
            raise OracleMismatchError(
                f"ring multiplications grew by {ratio:.3f} from n={n} to n={2 * n}, limit {MAX_DOUBLING_RATIO}",
                details={"n": n, "ratio": ratio},
            )
    logger.info("bench finished", family=args.family, sizes=sizes)
    return rows
