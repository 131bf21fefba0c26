from .instances import (
    arrow_matrix,
    band_decompositions,
    band_matrix,
    block_example,
    diagonal_slices,
    few_directions_system,
    grid_matrix,
    identical_slices,
    random_sparse_tensor,
    random_zonotope_system,
    two_per_row_matrix,
)

__all__ = [
    "arrow_matrix",
    "band_decompositions",
    "band_matrix",
    "block_example",
    "diagonal_slices",
    "few_directions_system",
    "grid_matrix",
    "identical_slices",
    "random_sparse_tensor",
    "random_zonotope_system",
    "two_per_row_matrix",
]
