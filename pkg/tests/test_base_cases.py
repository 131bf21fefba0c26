from itertools import combinations, product

import pytest

from app.modules.base_cases import BlockTable, FunctionSignature, all_subvalues, lemma_sum_matrix
from app.modules.generators.instances import random_sparse_tensor
from app.modules.oracle import exact_determinant, naive_generalized
from app.modules.shared.errors import WidthTooLargeError
from app.modules.subsetconv import RingCounter
from app.modules.tensor_model import AxisSubsetSelection, subtensor

from conftest import dense


def selections(lengths):
    """Every equal-cardinality selection with at least one index per axis."""
    for k in range(1, min(lengths) + 1):
        choices = [list(combinations(range(n), k)) for n in lengths]
        for subsets in product(*choices):
            yield AxisSubsetSelection(tuple(subsets))


def test_two_by_two():
    matrix = dense([[1, 2], [3, 4]])
    full = AxisSubsetSelection.full(matrix)
    assert all_subvalues(matrix, FunctionSignature.permanent()).value(full) == 10
    assert all_subvalues(matrix, FunctionSignature.determinant()).value(full) == -2


def test_empty_selection_is_one():
    table = all_subvalues(dense([[0, 5], [0, 0]]), FunctionSignature.determinant())
    assert table.values[0] == 1
    assert table.value(AxisSubsetSelection.of([[0], [1]])) == 5
    assert table.value(AxisSubsetSelection.of([[1], [0]])) == 0


@pytest.mark.parametrize(
    "signature",
    [FunctionSignature.permanent(), FunctionSignature.determinant()],
    ids=["perm", "det"],
)
def test_matrix_subblocks_match_naive(rng, signature):
    matrix = random_sparse_tensor(2, 4, 0.6, rng)
    table = all_subvalues(matrix, signature)
    for selection in selections(matrix.lengths):
        assert table.value(selection) == naive_generalized(subtensor(matrix, selection), signature)


@pytest.mark.parametrize(
    "signature",
    [
        FunctionSignature.mixed_discriminant(),
        FunctionSignature.multidimensional_permanent(2),
        FunctionSignature((True, False)),
        FunctionSignature((False, True)),
    ],
    ids=lambda s: s.describe(),
)
def test_order_three_subblocks_match_naive(rng, signature):
    tensor = random_sparse_tensor(3, 3, 0.5, rng)
    table = all_subvalues(tensor, signature)
    for selection in selections(tensor.lengths):
        assert table.value(selection) == naive_generalized(subtensor(tensor, selection), signature)


def test_rectangular_block():
    block = dense([[1, 2, 3], [4, 5, 6]])
    table = all_subvalues(block, FunctionSignature.determinant())
    assert table.value(AxisSubsetSelection.of([[0, 1], [0, 2]])) == 1 * 6 - 3 * 4
    assert table.value(AxisSubsetSelection.of([[0, 1], [1, 2]])) == 2 * 6 - 3 * 5


def test_signature_helpers():
    assert FunctionSignature.hyperdeterminant(3).signed_axes == (1, 2, 3)
    assert FunctionSignature.hyperdeterminant(3).row_sign_axes == (0, 1, 2, 3)
    assert FunctionSignature.mixed_discriminant().row_sign_axes == (1, 2)
    assert FunctionSignature.multidimensional_permanent(2).is_all_plus
    assert FunctionSignature((True, False)).describe() == "s+"
    with pytest.raises(ValueError):
        FunctionSignature(())


def test_block_table_masks():
    table = BlockTable((2, 3))
    selection = AxisSubsetSelection.of([[1], [0, 2]])
    mask = table.mask_of(selection)
    assert mask == 0b10110
    assert table.selection_of(mask) == selection
    assert table.width == 5


def test_block_table_keys_are_packed_int_masks():
    table = all_subvalues(dense([[1, 2], [3, 4]]), FunctionSignature.permanent())
    assert all(isinstance(key, int) for key in table.values)
    # rows on bits 0-1, columns on bits 2-3
    assert table.values[0b0101] == 1
    assert table.values[0b1001] == 2
    assert table.values[0b1010] == 4
    assert table.values[0b1111] == 10


def test_cap_is_checked_before_work():
    with pytest.raises(WidthTooLargeError):
        all_subvalues(dense([[1, 1], [1, 1]]), FunctionSignature.permanent(), cap=3)


def test_signature_must_fit_block():
    with pytest.raises(ValueError):
        all_subvalues(dense([[1]]), FunctionSignature.mixed_discriminant())


def test_counter_is_filled():
    counter = RingCounter()
    all_subvalues(dense([[1, 2], [3, 4]]), FunctionSignature.permanent(), counter)
    # four singletons, then rows {0} over each of the two level-one keys of row 1
    assert counter.mults == 6


@pytest.mark.parametrize("s", [[5], [1, 2, 3], [2, -7, 0, 4], [1, 1, 1, 1, 1]])
def test_lemma_sum_matrix(s):
    matrix = lemma_sum_matrix(s)
    assert exact_determinant(matrix) == sum(s)
    full = AxisSubsetSelection.full(matrix)
    assert all_subvalues(matrix, FunctionSignature.determinant()).value(full) == sum(s)


def test_lemma_sum_matrix_needs_entries():
    with pytest.raises(ValueError):
        lemma_sum_matrix([])
