from .oracle import exact_determinant, naive_generalized, naive_mixed_volume, ryser_permanent, zero_sum_subset_count

__all__ = [
    "exact_determinant",
    "naive_generalized",
    "naive_mixed_volume",
    "ryser_permanent",
    "zero_sum_subset_count",
]
