from .decomposition import (
    TreeDecomposition,
    WidthConvention,
    check_width_cap,
    default_convention,
    normalize,
    restrict,
    single_bag,
    validate,
)
from .heuristics import HEURISTICS, elimination_order, heuristic_decomposition
from .lifts import RowAssignment, assign_rows, lift_column_to_bipartite, lift_symmetrized_to_bipartite
from .td_io import read_decomposition, read_decomposition_file, write_decomposition, write_decomposition_file

__all__ = [
    "TreeDecomposition",
    "WidthConvention",
    "check_width_cap",
    "default_convention",
    "normalize",
    "restrict",
    "single_bag",
    "validate",
    "HEURISTICS",
    "elimination_order",
    "heuristic_decomposition",
    "RowAssignment",
    "assign_rows",
    "lift_column_to_bipartite",
    "lift_symmetrized_to_bipartite",
    "read_decomposition",
    "read_decomposition_file",
    "write_decomposition",
    "write_decomposition_file",
]
