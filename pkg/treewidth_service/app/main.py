"""
커맨드라인 진입점

    python -m app.main [--threads N] [--log-level LEVEL] <command> ...

stdout 은 결과 전용, 로그와 에러는 stderr.
"""

import argparse
import sys
from typing import Optional, Sequence

from app.commands import bench, compute, decomp, gen, mvol
from app.config.settings import settings
from app.modules.shared.errors import ExitCode, TreewidthServiceError
from app.modules.shared.logger import get_cli_logger, logger as service_logger
from app.schemas.report_schemas import RunReport

logger = get_cli_logger()

COMMANDS = (compute, mvol, gen, decomp, bench)


class UsageArgumentParser(argparse.ArgumentParser):
    """`error: ...` 를 출력하고 사용법 종료 코드로 끝나는 argparse"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(int(ExitCode.USAGE))


def build_parser() -> argparse.ArgumentParser:
    parser = UsageArgumentParser(
        prog="twperm",
        description=f"{settings.APP_NAME} {settings.VERSION}: exact permanents, determinants, "
        "mixed discriminants, hyperdeterminants and mixed volumes over tree decompositions",
    )
    parser.add_argument("--threads", type=int, default=None, help=f"sibling-subtree threads (default {settings.THREADS})")
    parser.add_argument("--log-level", default=None, help=f"log level (default {settings.LOG_LEVEL})")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=UsageArgumentParser)
    for command in COMMANDS:
        command.add_parser(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """명령 하나를 실행하고 프로세스 종료 코드 반환"""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv

    if args.log_level:
        service_logger.configure(args.log_level)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return int(ExitCode.USAGE)

    try:
        report = args.handler(args)
    except TreewidthServiceError as e:
        logger.debug("Command failed", command=args.command, code=e.code.value, trace_id=e.trace_id)
        print(f"error: {e.message}", file=sys.stderr)
        return int(e.exit_code)
    if isinstance(report, RunReport):
        logger.debug("Run report", report=report.model_dump_json())
    return int(ExitCode.OK)


if __name__ == "__main__":
    sys.exit(main())
