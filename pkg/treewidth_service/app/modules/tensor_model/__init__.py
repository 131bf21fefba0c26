from .tensor import (
    AxisSubsetSelection,
    Index,
    Scalar,
    SparseTensor,
    format_scalar,
    normalize_scalar,
    parse_scalar,
    subtensor,
)
from .tensor_io import parse_tensor, read_tensor_file, serialize_tensor, write_tensor_file

__all__ = [
    "AxisSubsetSelection",
    "Index",
    "Scalar",
    "SparseTensor",
    "format_scalar",
    "normalize_scalar",
    "parse_scalar",
    "subtensor",
    "parse_tensor",
    "read_tensor_file",
    "serialize_tensor",
    "write_tensor_file",
]
