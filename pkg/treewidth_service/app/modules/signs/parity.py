"""
패리티 도구: 순열 부호, 순서 분할 부호, 교차 역위 테이블
"""

from typing import Dict, Hashable, Iterable, List, Sequence, Set, Tuple

from app.modules.shared.errors import ErrorCode, create_kernel_error

Label = Tuple[int, int]  # (axis, index). 같은 축의 라벨끼리만 순서가 있음


def perm_sign(images: Sequence[Hashable]) -> int:
    """
    순서 있는 정의역의 상(image) 목록으로 주어진 전단사의 부호

    Args:
        images: images[i] 는 i 번째로 작은 정의역 원소의 상.
            상은 서로 다르고 비교 가능해야 함

    Returns:
        +1 또는 -1, (-1)^(역위 수). 사이클 개수로 계산
    """
    n = len(images)
    ranked = sorted(images)
    if len(set(ranked)) != n:
        raise create_kernel_error(ErrorCode.NOT_A_BIJECTION, f"images {list(images)} are not distinct")
    position = {value: i for i, value in enumerate(ranked)}
    target = [position[value] for value in images]

    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        node = start
        while not seen[node]:
            seen[node] = True
            node = target[node]
    return -1 if (n - cycles) % 2 else 1


def partition_sign(blocks: Sequence[Iterable[Hashable]]) -> int:
    """정렬된 블록을 차례로 이어 붙인 순열의 부호"""
    concatenated: List[Hashable] = []
    seen: Set[Hashable] = set()
    for block in blocks:
        block = sorted(block)
        overlap = seen.intersection(block)
        if overlap:
            raise create_kernel_error(
                ErrorCode.OVERLAPPING_BLOCKS, f"blocks share elements {sorted(overlap)}"
            )
        seen.update(block)
        concatenated.extend(block)
    return perm_sign(concatenated)


def _inversions(first: Iterable[Label], second: Iterable[Label]) -> int:
    """#{(x, y): x in first, y in second, 같은 축, x > y}"""
    by_axis: Dict[int, List[int]] = {}
    for axis, index in second:
        by_axis.setdefault(axis, []).append(index)
    return sum(1 for axis, index in first for other in by_axis.get(axis, ()) if index > other)


class CrossInversionTable:
    """
    누적 블록 뒤에 블록 하나를 붙일 때의 부호를 O(w) 에 주는 오라클

    bag 의 순서 있는 기저 집합, 보이는 마스크 A (누적) 와 B (다음),
    잊힌 라벨의 숨은 블록 delta_acc, delta_next 에 대해
    sign(A, B) = (-1)^inv(A + delta_acc, B + delta_next).
    역위는 `sign_axes` 에 속한 같은 축 라벨끼리만 셈.

    Attributes:
        n_next: 기저 원소별 N_x = #{y in delta_next : x > y}
        n_acc: 기저 원소별 #{y in delta_acc : y > x}
        constant: inv(delta_acc, delta_next) 의 패리티
    """

    def __init__(
        self,
        ground: Sequence[Label],
        sign_axes: Iterable[int],
        delta_acc: Iterable[Label] = (),
        delta_next: Iterable[Label] = (),
    ):
        self.ground: Tuple[Label, ...] = tuple(ground)
        self.sign_axes = frozenset(sign_axes)
        delta_acc = [label for label in delta_acc if label[0] in self.sign_axes]
        delta_next = [label for label in delta_next if label[0] in self.sign_axes]

        self.n_next: List[int] = []
        self.n_acc: List[int] = []
        self.next_mask = 0
        self.acc_mask = 0
        self.higher: List[int] = []
        for bit, (axis, index) in enumerate(self.ground):
            if axis not in self.sign_axes:
                self.n_next.append(0)
                self.n_acc.append(0)
                self.higher.append(0)
                continue
            below_next = sum(1 for a, i in delta_next if a == axis and i < index)
            above_acc = sum(1 for a, i in delta_acc if a == axis and i > index)
            self.n_next.append(below_next)
            self.n_acc.append(above_acc)
            if below_next % 2:
                self.next_mask |= 1 << bit
            if above_acc % 2:
                self.acc_mask |= 1 << bit
            higher = 0
            for other_bit, (other_axis, other_index) in enumerate(self.ground):
                if other_axis == axis and other_index > index:
                    higher |= 1 << other_bit
            self.higher.append(higher)

        self.constant = _inversions(delta_acc, delta_next) % 2

    def sign(self, mask_a: int, mask_b: int) -> int:
        parity = self.constant
        parity += (mask_a & self.next_mask).bit_count()
        parity += (mask_b & self.acc_mask).bit_count()
        b = mask_b
        while b:
            low = b & -b
            parity += (mask_a & self.higher[low.bit_length() - 1]).bit_count()
            b ^= low
        return -1 if parity % 2 else 1

    __call__ = sign


def sign_oracle(table: CrossInversionTable, mask_a: int, mask_b: int) -> int:
    """겹침을 명시적으로 검사하는 S(A, B)"""
    if mask_a & mask_b:
        raise create_kernel_error(
            ErrorCode.OVERLAPPING_BLOCKS, f"masks {mask_a:b} and {mask_b:b} overlap"
        )
    return table.sign(mask_a, mask_b)
