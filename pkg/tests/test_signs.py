from itertools import permutations

import pytest

from app.modules.shared.errors import ErrorCode, KernelError
from app.modules.signs import CrossInversionTable, partition_sign, perm_sign, sign_oracle


def inversion_sign(sequence):
    inversions = sum(1 for i in range(len(sequence)) for j in range(i + 1, len(sequence)) if sequence[i] > sequence[j])
    return -1 if inversions % 2 else 1


def brute_sign(first, second, sign_axes):
    """(-1)^#{(x, y) in first x second on one signed axis with x > y}."""
    count = sum(1 for ax, x in first for ay, y in second if ax == ay and ax in sign_axes and x > y)
    return -1 if count % 2 else 1


def labels_of(ground, mask):
    return [label for bit, label in enumerate(ground) if mask >> bit & 1]


def test_perm_sign_examples():
    assert perm_sign([2, 3, 1]) == 1
    assert perm_sign([2, 1, 3]) == -1
    assert perm_sign([]) == 1
    assert perm_sign(["b", "a"]) == -1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_perm_sign_matches_inversion_count(n):
    for images in permutations(range(n)):
        assert perm_sign(images) == inversion_sign(images)


def test_perm_sign_on_non_contiguous_images():
    assert perm_sign([10, 4, 7]) == inversion_sign([10, 4, 7])


def test_perm_sign_rejects_repeats():
    with pytest.raises(KernelError) as exc:
        perm_sign([1, 1])
    assert exc.value.code == ErrorCode.NOT_A_BIJECTION


def test_partition_sign():
    assert partition_sign([{2}, {1, 3}]) == -1
    assert partition_sign([{1, 3}, {2}]) == -1
    assert partition_sign([{1, 2}, {3}]) == 1
    assert partition_sign([set(), {3, 1}]) == 1
    with pytest.raises(KernelError) as exc:
        partition_sign([{1, 2}, {2}])
    assert exc.value.code == ErrorCode.OVERLAPPING_BLOCKS


class TestCrossInversionTable:
    ground = ((0, 1), (0, 4), (1, 2), (1, 5), (2, 3))
    delta_acc = ((0, 3), (1, 7))
    delta_next = ((0, 0), (0, 6), (1, 1), (2, 0))

    @pytest.mark.parametrize("sign_axes", [{0}, {0, 1}, {1, 2}, {0, 1, 2}, set()])
    def test_matches_brute_force_on_all_disjoint_pairs(self, sign_axes):
        table = CrossInversionTable(self.ground, sign_axes, self.delta_acc, self.delta_next)
        full = (1 << len(self.ground)) - 1
        for a in range(full + 1):
            for b in range(full + 1):
                if a & b:
                    continue
                first = labels_of(self.ground, a) + list(self.delta_acc)
                second = labels_of(self.ground, b) + list(self.delta_next)
                assert table.sign(a, b) == brute_sign(first, second, sign_axes)

    def test_without_hidden_blocks(self):
        table = CrossInversionTable(((0, 0), (0, 1), (0, 2)), {0})
        # A = {2}, B = {0, 1}: two inversions
        assert table(0b100, 0b011) == 1
        # A = {1}, B = {0}: one inversion
        assert table(0b010, 0b001) == -1
        assert table(0b001, 0b010) == 1

    def test_overlap_is_rejected(self):
        table = CrossInversionTable(((0, 0), (0, 1)), {0})
        with pytest.raises(KernelError) as exc:
            sign_oracle(table, 0b01, 0b11)
        assert exc.value.code == ErrorCode.OVERLAPPING_BLOCKS
        assert sign_oracle(table, 0b10, 0b01) == -1
