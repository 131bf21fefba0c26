"""
명령 핸들러 공용 헬퍼
"""

import argparse
import json
from pathlib import Path
from typing import List, Optional

from app.config.settings import settings
from app.modules.graphs.graphs import GraphKind
from app.modules.shared.errors import OracleMismatchError, ParameterError
from app.modules.shared.logger import get_cli_logger
from app.modules.tensor_model.tensor import Scalar, format_scalar
from app.modules.treedecomp.heuristics import HEURISTICS
from app.schemas.report_schemas import EngineStatsReport, MismatchReport, digest_text

logger = get_cli_logger()

GRAPH_CHOICES = {
    "bipartite": GraphKind.BIPARTITE,
    "multipartite": GraphKind.MULTIPARTITE,
    "column": GraphKind.COLUMN,
    "symmetrized": GraphKind.SYMMETRIZED,
}


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParameterError(f"cannot read {path}: {e}") from e


def add_heuristic_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--heuristic",
        choices=sorted(HEURISTICS),
        default=None,
        help=f"elimination heuristic (default {settings.DEFAULT_HEURISTIC})",
    )


def parse_int_list(text: str) -> List[int]:
    """`1,-1,3` -> [1, -1, 3]"""
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ParameterError(f"expected a comma-separated integer list, got '{text}'") from None


def check_oracle(function: str, value: Scalar, oracle_value: Scalar, input_text: Optional[str]) -> str:
    """`oracle: match` 출력, 불일치면 OracleMismatchError"""
    if value != oracle_value:
        report = MismatchReport(
            function=function,
            engine_value=format_scalar(value),
            oracle_value=format_scalar(oracle_value),
            input_digest=digest_text(input_text) if input_text is not None else None,
        )
        logger.error("Oracle mismatch", **report.model_dump(exclude={"details"}))
        raise OracleMismatchError(
            f"engine value {report.engine_value} differs from oracle value {report.oracle_value}",
            details=report.model_dump(),
        )
    print("oracle: match")
    return format_scalar(oracle_value)


def write_stats(path: Optional[str], stats: EngineStatsReport) -> None:
    if not path:
        return
    Path(path).write_text(json.dumps(stats.model_dump(), indent=2) + "\n", encoding="utf-8")
    logger.debug("Stats written", path=path)
