"""
`gen` 명령: 생성기 계열의 인스턴스 쓰기
"""

import argparse
import random
from pathlib import Path
from typing import Optional

from app.commands.common import parse_int_list
from app.config.settings import settings
from app.modules.generators import instances
from app.modules.shared.errors import ParameterError
from app.modules.shared.logger import get_cli_logger
from app.modules.tensor_model.tensor_io import serialize_tensor
from app.modules.zonotopes.zonotope_io import serialize_zonotopes
from app.modules.zonotopes.zonotopes import subset_sum_instance

logger = get_cli_logger()

FAMILIES = (
    "band",
    "grid",
    "two-per-row",
    "arrow",
    "random",
    "identical-slices",
    "subset-sum",
    "few-directions",
)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("gen", help="generate an instance file")
    parser.add_argument("family", choices=FAMILIES)
    parser.add_argument("--output", "-o", help="output file (stdout when omitted)")
    parser.add_argument("--n", type=int, help="size")
    parser.add_argument("--w1", type=int, default=1, help="band: lower bandwidth")
    parser.add_argument("--w2", type=int, default=1, help="band: upper bandwidth")
    parser.add_argument("--m", type=int, help="grid: side length (n = m^2)")
    parser.add_argument("--order", type=int, default=2, help="random: tensor order")
    parser.add_argument("--density", type=float, default=0.3, help="random: nonzero probability")
    parser.add_argument("--a", help="subset-sum / few-directions: comma-separated integers")
    parser.add_argument("--b", help="few-directions: comma-separated integers")
    parser.add_argument("--delta", type=int, default=0, help="subset-sum: shift")
    parser.add_argument("--seed", type=int, default=None, help=f"random seed (default {settings.RANDOM_SEED})")
    parser.set_defaults(handler=cmd_gen)


def _need(value: Optional[int], flag: str, family: str) -> int:
    if value is None:
        raise ParameterError(f"gen {family} requires {flag}")
    return value


def render(args: argparse.Namespace) -> str:
    """선택한 계열의 직렬화된 인스턴스"""
    family = args.family
    rng = random.Random(settings.RANDOM_SEED if args.seed is None else args.seed)
    comment = f"gen {family}"

    if family == "band":
        n = _need(args.n, "--n", family)
        return serialize_tensor(instances.band_matrix(n, args.w1, args.w2, rng), f"{comment} n={n} w1={args.w1} w2={args.w2}")
    if family == "grid":
        m = _need(args.m, "--m", family)
        return serialize_tensor(instances.grid_matrix(m), f"{comment} m={m}")
    if family == "two-per-row":
        n = _need(args.n, "--n", family)
        return serialize_tensor(instances.two_per_row_matrix(n, rng), f"{comment} n={n}")
    if family == "arrow":
        n = _need(args.n, "--n", family)
        return serialize_tensor(instances.arrow_matrix(n), f"{comment} n={n}")
    if family == "random":
        n = _need(args.n, "--n", family)
        tensor = instances.random_sparse_tensor(args.order, n, args.density, rng)
        return serialize_tensor(tensor, f"{comment} order={args.order} n={n} density={args.density}")
    if family == "identical-slices":
        n = _need(args.n, "--n", family)
        matrix = instances.random_sparse_tensor(2, n, args.density, rng).to_dense().tolist()
        return serialize_tensor(instances.identical_slices(matrix), f"{comment} n={n}")
    if family == "subset-sum":
        if not args.a:
            raise ParameterError("gen subset-sum requires --a")
        a = parse_int_list(args.a)
        return serialize_zonotopes(subset_sum_instance(a, args.delta), f"{comment} a={args.a} delta={args.delta}")
    if family == "few-directions":
        if not args.a or not args.b:
            raise ParameterError("gen few-directions requires --a and --b")
        system = instances.few_directions_system(parse_int_list(args.a), parse_int_list(args.b))
        return serialize_zonotopes(system, f"{comment} a={args.a} b={args.b}")
    raise ParameterError(f"unknown family '{family}'")


def cmd_gen(args: argparse.Namespace) -> None:
    text = render(args)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        logger.info("Instance written", family=args.family, path=args.output)
    else:
        print(text, end="")
