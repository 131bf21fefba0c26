"""
텐서 파일 형식

    c comment
    tensor <order> <len_0> ... <len_{order-1}>
    <i_0> ... <i_{order-1}> <value>

인덱스는 1-based, 값은 정확한 정수 (또는 p/q 유리수).
"""

from pathlib import Path
from typing import Dict, Union

from app.modules.shared.errors import ErrorCode, TensorFormatError, create_tensor_error
from app.modules.shared.logger import get_tensor_logger
from app.modules.tensor_model.tensor import Index, Scalar, SparseTensor, format_scalar, parse_scalar

logger = get_tensor_logger()


def parse_tensor(text: str) -> SparseTensor:
    """
    텐서 파일 형식 파싱

    Args:
        text: 파일 내용

    Returns:
        SparseTensor: 나열된 0 아닌 항목만 포함

    Raises:
        TensorFormatError: 문법 오류 (줄 번호 포함), 범위 초과, 중복 또는 0 항목
    """
    lengths = None
    entries: Dict[Index, Scalar] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()

        if lengths is None:
            if tokens[0] != "tensor":
                raise create_tensor_error(
                    ErrorCode.TENSOR_SYNTAX,
                    f"line {line_no}: expected header 'tensor <order> <lengths...>'",
                    details={"line": line_no},
                )
            try:
                order = int(tokens[1])
                lengths = tuple(int(tok) for tok in tokens[2:])
            except (IndexError, ValueError):
                raise create_tensor_error(
                    ErrorCode.TENSOR_SYNTAX, f"line {line_no}: malformed header", details={"line": line_no}
                ) from None
            if order < 2:
                raise create_tensor_error(ErrorCode.WRONG_ORDER, f"line {line_no}: order must be at least 2")
            if len(lengths) != order or any(n < 0 for n in lengths):
                raise create_tensor_error(
                    ErrorCode.TENSOR_SYNTAX,
                    f"line {line_no}: header lists {len(lengths)} lengths for order {order}",
                    details={"line": line_no},
                )
            continue

        if len(tokens) != len(lengths) + 1:
            raise create_tensor_error(
                ErrorCode.TENSOR_SYNTAX,
                f"line {line_no}: expected {len(lengths)} indices and a value",
                details={"line": line_no},
            )
        try:
            index = tuple(int(tok) - 1 for tok in tokens[:-1])
            value = parse_scalar(tokens[-1])
        except (ValueError, ZeroDivisionError):
            raise create_tensor_error(
                ErrorCode.TENSOR_SYNTAX, f"line {line_no}: malformed entry '{line}'", details={"line": line_no}
            ) from None

        if any(not 0 <= i < n for i, n in zip(index, lengths)):
            raise create_tensor_error(
                ErrorCode.INDEX_OUT_OF_BOUNDS,
                f"line {line_no}: index {tuple(i + 1 for i in index)} outside {lengths}",
                details={"line": line_no},
            )
        if value == 0:
            raise create_tensor_error(
                ErrorCode.ZERO_ENTRY, f"line {line_no}: zero-valued entry", details={"line": line_no}
            )
        if index in entries:
            raise create_tensor_error(
                ErrorCode.DUPLICATE_ENTRY,
                f"line {line_no}: duplicate entry {tuple(i + 1 for i in index)}",
                details={"line": line_no},
            )
        entries[index] = value

    if lengths is None:
        raise create_tensor_error(ErrorCode.TENSOR_SYNTAX, "missing 'tensor' header line")

    tensor = SparseTensor(lengths, entries)
    logger.debug("Parsed tensor", lengths=tensor.lengths, nnz=tensor.nnz)
    return tensor


def serialize_tensor(tensor: SparseTensor, comment: str = None) -> str:
    """parse_tensor 의 역. 항목은 인덱스 사전순"""
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    lines.append(" ".join(["tensor", str(tensor.order), *map(str, tensor.lengths)]))
    for index in sorted(tensor.entries):
        lines.append(" ".join([*(str(i + 1) for i in index), format_scalar(tensor.entries[index])]))
    return "\n".join(lines) + "\n"


def read_tensor_file(path: Union[str, Path]) -> SparseTensor:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise TensorFormatError(ErrorCode.TENSOR_SYNTAX, f"cannot read tensor file {path}: {e}") from e
    return parse_tensor(text)


def write_tensor_file(tensor: SparseTensor, path: Union[str, Path], comment: str = None) -> None:
    Path(path).write_text(serialize_tensor(tensor, comment), encoding="utf-8")
