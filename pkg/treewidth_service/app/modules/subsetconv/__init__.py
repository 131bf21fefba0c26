from .convolution import (
    RingCounter,
    SignOracle,
    SubsetTable,
    mobius_transform,
    popcounts,
    ranked_mobius,
    ranked_zeta,
    signed_convolve,
    subset_convolve_many,
    zeta_transform,
)

__all__ = [
    "RingCounter",
    "SignOracle",
    "SubsetTable",
    "mobius_transform",
    "popcounts",
    "ranked_mobius",
    "ranked_zeta",
    "signed_convolve",
    "subset_convolve_many",
    "zeta_transform",
]
