"""
첫 축을 따라 전개한 일반화 함수의 모든 부분 블록 값
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.modules.shared.errors import WidthTooLargeError
from app.modules.subsetconv.convolution import RingCounter, SubsetTable
from app.modules.tensor_model.tensor import AxisSubsetSelection, Scalar, SparseTensor


@dataclass(frozen=True)
class FunctionSignature:
    """
    자유 축 l = 1..d 마다 epsilon_l: True 는 sgn(pi_l), False 는 상수 1

    퍼머넌트 = (False,), 행렬식 = (True,), 혼합 판별식 = (True, True),
    하이퍼디터미넌트 = d + 1 이 짝수이고 모두 True, 다차원 퍼머넌트 = 모두 False.
    """
    signs: Tuple[bool, ...]

    def __post_init__(self):
        if len(self.signs) < 1:
            raise ValueError("a function signature needs at least one free axis")

    @classmethod
    def permanent(cls) -> "FunctionSignature":
        return cls((False,))

    @classmethod
    def determinant(cls) -> "FunctionSignature":
        return cls((True,))

    @classmethod
    def mixed_discriminant(cls) -> "FunctionSignature":
        return cls((True, True))

    @classmethod
    def hyperdeterminant(cls, free_axes: int) -> "FunctionSignature":
        return cls((True,) * free_axes)

    @classmethod
    def multidimensional_permanent(cls, free_axes: int) -> "FunctionSignature":
        return cls((False,) * free_axes)

    @property
    def d(self) -> int:
        return len(self.signs)

    @property
    def signed_axes(self) -> Tuple[int, ...]:
        """sgn(pi_l) 이 붙는 텐서 축 (자유 축 중 1-based)"""
        return tuple(l + 1 for l, signed in enumerate(self.signs) if signed)

    @property
    def is_all_plus(self) -> bool:
        return not any(self.signs)

    @property
    def row_sign_axes(self) -> Tuple[int, ...]:
        """
        블록 재귀에 순서 분할 부호가 들어가는 축: 부호 있는 모든 축,
        부호 있는 축의 수가 홀수면 축 0 도 포함.
        """
        axes = self.signed_axes
        return ((0,) + axes) if len(axes) % 2 else axes

    def describe(self) -> str:
        return "".join("s" if s else "+" for s in self.signs)


@dataclass
class BlockTable:
    """
    블록의 크기가 같은 모든 선택에 대한 f(D, Y^1, ..., Y^d)

    키는 packed int 마스크: 축 우선, 축 l 의 인덱스 i 는 비트 offsets[l] + i.
    없는 키는 값 0, 모두 빈 키 0 은 값 1.
    """
    lengths: Tuple[int, ...]
    values: Dict[int, Scalar] = field(default_factory=dict)

    @property
    def offsets(self) -> Tuple[int, ...]:
        offsets, running = [], 0
        for n in self.lengths:
            offsets.append(running)
            running += n
        return tuple(offsets)

    @property
    def width(self) -> int:
        return sum(self.lengths)

    def mask_of(self, selection: AxisSubsetSelection) -> int:
        mask = 0
        for offset, subset in zip(self.offsets, selection.subsets):
            for i in subset:
                mask |= 1 << (offset + i)
        return mask

    def value(self, selection: AxisSubsetSelection) -> Scalar:
        return self.values.get(self.mask_of(selection), 0)

    def selection_of(self, mask: int) -> AxisSubsetSelection:
        return AxisSubsetSelection(
            tuple(
                tuple(i for i in range(n) if mask >> (offset + i) & 1)
                for offset, n in zip(self.offsets, self.lengths)
            )
        )

    def to_subset_table(self, ground: Sequence) -> SubsetTable:
        return SubsetTable.from_dict(ground, self.values)


def all_subvalues(
    block: SparseTensor,
    signature: FunctionSignature,
    counter: Optional[RingCounter] = None,
    cap: Optional[int] = None,
) -> BlockTable:
    """
    bag 블록의 모든 부분 블록에서의 일반화 함수 값

    단계 k+1 은 단계 k 에 새 첫 행 a_0 (이미 선택된 모든 행보다 작음) 과
    자유 축마다 인덱스 x_l 하나를 더해 만든다. 부호 있는 축마다
    여인수 부호 (-1)^{#(Y'^l below x_l)} 적용.

    Args:
        block: bag 의 부분 텐서 (차수 d + 1)
        signature: 자유 축별 epsilon
        counter: ring 곱셈 카운터 (선택)
        cap: 블록 전체 크기의 비트마스크 상한 (기본값 MAX_BAG_SIZE)

    Returns:
        BlockTable: packed 마스크 키
    """
    cap = settings.MAX_BAG_SIZE if cap is None else cap
    if sum(block.lengths) > cap:
        raise WidthTooLargeError(
            f"block of total size {sum(block.lengths)} exceeds the bitmask cap {cap}",
            details={"lengths": block.lengths, "cap": cap},
        )
    if block.free_axes != signature.d:
        raise ValueError(f"signature for d={signature.d} applied to an order-{block.order} block")

    table = BlockTable(tuple(block.lengths))
    offsets = table.offsets
    n_rows = block.lengths[0]
    row_mask = (1 << n_rows) - 1
    signed = [l for l in signature.signed_axes]

    # 행별 entry: (열 비트마스크, 부호 계산용 (offset, 위치) 목록, 값)
    expansions: List[List[Tuple[int, List[Tuple[int, int]], Scalar]]] = [[] for _ in range(n_rows)]
    for row, items in block.rows().items():
        for rest, value in items:
            mask = 0
            for l, x in enumerate(rest, start=1):
                mask |= 1 << (offsets[l] + x)
            sign_positions = [(offsets[l], rest[l - 1]) for l in signed]
            expansions[row].append((mask, sign_positions, value))

    table.values[0] = 1
    current: Dict[int, Scalar] = {0: 1}
    mults = 0
    for _ in range(min(block.lengths)):
        following: Dict[int, Scalar] = {}
        for key, value in current.items():
            rows = key & row_mask
            first = (rows & -rows).bit_length() - 1 if rows else n_rows
            for a0 in range(first):
                for mask, sign_positions, entry in expansions[a0]:
                    if key & mask:
                        continue
                    parity = 0
                    for offset, x in sign_positions:
                        parity += (key & ((1 << (offset + x)) - (1 << offset))).bit_count()
                    term = entry * value
                    mults += 1
                    target = key | mask | (1 << a0)
                    following[target] = following.get(target, 0) + (-term if parity % 2 else term)
        current = {key: value for key, value in following.items() if value != 0}
        if not current:
            break
        table.values.update(current)

    if counter is not None:
        counter.add(mults)
    return table


def lemma_sum_matrix(s: Sequence[Scalar]) -> SparseTensor:
    """
    행 1..n-1 은 대각 1, 윗대각 -1 이고 마지막 행이 s 인 n x n 행렬

    행렬식은 s_1 + ... + s_n.
    """
    n = len(s)
    if n < 1:
        raise ValueError("lemma_sum_matrix needs at least one entry")
    entries = {}
    for i in range(n - 1):
        entries[(i, i)] = 1
        entries[(i, i + 1)] = -1
    for j, value in enumerate(s):
        if value != 0:
            entries[(n - 1, j)] = value
    return SparseTensor((n, n), entries)
