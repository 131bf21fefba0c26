"""
조노토프 파일 형식

    c comment
    zonotopes <n>
    z <m>
    <g_1> ... <g_n>        (정확한 유리수 생성자 m 줄)

헤더 뒤에 정확히 n 개의 `z` 블록.
"""

from pathlib import Path
from typing import List, Union

from app.modules.shared.errors import ErrorCode, ZonotopeError, create_zonotope_error
from app.modules.shared.logger import get_zonotope_logger
from app.modules.tensor_model.tensor import format_scalar, parse_scalar
from app.modules.zonotopes.zonotopes import ZonotopeSystem

logger = get_zonotope_logger()


def _syntax(line_no: int, message: str) -> ZonotopeError:
    return create_zonotope_error(ErrorCode.ZONOTOPE_SYNTAX, f"line {line_no}: {message}", details={"line": line_no})


def parse_zonotopes(text: str) -> ZonotopeSystem:
    """
    조노토프 파일 형식 파싱

    Raises:
        ZonotopeError: 문제 줄 번호와 함께 ZONOTOPE_SYNTAX
    """
    n = None
    zonotopes: List[List[list]] = []
    pending = 0
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        last_line = line_no
        tokens = line.split()

        if n is None:
            if tokens[0] != "zonotopes" or len(tokens) != 2:
                raise _syntax(line_no, "expected header 'zonotopes <n>'")
            try:
                n = int(tokens[1])
            except ValueError:
                raise _syntax(line_no, "malformed dimension") from None
            if n < 1:
                raise _syntax(line_no, "dimension must be positive")
            continue

        if pending == 0:
            if tokens[0] != "z" or len(tokens) != 2:
                raise _syntax(line_no, "expected 'z <m>'")
            if len(zonotopes) == n:
                raise _syntax(line_no, f"more than {n} zonotopes")
            try:
                pending = int(tokens[1])
            except ValueError:
                raise _syntax(line_no, "malformed generator count") from None
            if pending < 0:
                raise _syntax(line_no, "negative generator count")
            zonotopes.append([])
            continue

        if len(tokens) != n:
            raise _syntax(line_no, f"generator has {len(tokens)} coordinates, expected {n}")
        try:
            zonotopes[-1].append([parse_scalar(tok) for tok in tokens])
        except (ValueError, ZeroDivisionError):
            raise _syntax(line_no, f"malformed generator '{line}'") from None
        pending -= 1

    if n is None:
        raise create_zonotope_error(ErrorCode.ZONOTOPE_SYNTAX, "missing 'zonotopes' header line")
    if pending:
        raise _syntax(last_line, f"{pending} generator lines missing")
    if len(zonotopes) != n:
        raise create_zonotope_error(
            ErrorCode.ZONOTOPE_SYNTAX, f"header announces {n} zonotopes, file has {len(zonotopes)}"
        )

    system = ZonotopeSystem(zonotopes)
    logger.debug("Parsed zonotopes", n=n, generators=sum(len(z) for z in system.zonotopes))
    return system


def serialize_zonotopes(system: ZonotopeSystem, comment: str = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    lines.append(f"zonotopes {system.n}")
    for generators in system.zonotopes:
        lines.append(f"z {len(generators)}")
        lines.extend(" ".join(format_scalar(c) for c in generator) for generator in generators)
    return "\n".join(lines) + "\n"


def read_zonotope_file(path: Union[str, Path]) -> ZonotopeSystem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ZonotopeError(ErrorCode.ZONOTOPE_SYNTAX, f"cannot read zonotope file {path}: {e}") from e
    return parse_zonotopes(text)


def write_zonotope_file(system: ZonotopeSystem, path: Union[str, Path], comment: str = None) -> None:
    Path(path).write_text(serialize_zonotopes(system, comment), encoding="utf-8")
