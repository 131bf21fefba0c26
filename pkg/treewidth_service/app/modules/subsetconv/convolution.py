"""
Subset Convolution 모듈
bag 부분집합 위의 ranked zeta / Moebius 변환과 부호 있는 쌍 convolution
"""

from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.modules.shared.errors import ErrorCode, create_kernel_error
from app.modules.tensor_model.tensor import Scalar

SignOracle = Callable[[int, int], int]


class RingCounter:
    """ring 곱셈 횟수 카운터. 엔진은 실행 시간 대신 이 값을 보고"""

    __slots__ = ("mults",)

    def __init__(self):
        self.mults = 0

    def add(self, count: int) -> None:
        self.mults += count

    def merge(self, other: "RingCounter") -> None:
        self.mults += other.mults


class SubsetTable:
    """
    순서 있는 기저 집합의 부분집합 비트마스크로 색인된 값

    마스크의 비트 i 는 ground[i]. `values` 는 길이가 정확히 2^|ground| 인
    object dtype numpy 배열 (큰 정수와 분수가 정확히 유지됨).
    """

    __slots__ = ("ground", "values")

    def __init__(self, ground: Sequence[Hashable], values: Optional[np.ndarray] = None):
        self.ground: Tuple[Hashable, ...] = tuple(ground)
        size = 1 << len(self.ground)
        if values is None:
            values = np.zeros(size, dtype=object)
        elif len(values) != size:
            raise create_kernel_error(
                ErrorCode.GROUND_SET_MISMATCH,
                f"table of length {len(values)} on a ground set of {len(self.ground)} elements",
            )
        self.values = values

    @classmethod
    def unit(cls, ground: Sequence[Hashable]) -> "SubsetTable":
        """convolution 대수의 항등원: 공집합에서 1"""
        table = cls(ground)
        table.values[0] = 1
        return table

    @classmethod
    def from_dict(cls, ground: Sequence[Hashable], values: Dict[int, Scalar]) -> "SubsetTable":
        table = cls(ground)
        for mask, value in values.items():
            table.values[mask] = value
        return table

    @property
    def width(self) -> int:
        return len(self.ground)

    @property
    def size(self) -> int:
        return len(self.values)

    def __getitem__(self, mask: int) -> Scalar:
        return self.values[mask]

    def mask_of(self, elements: Iterable[Hashable]) -> int:
        position = {g: i for i, g in enumerate(self.ground)}
        mask = 0
        for element in elements:
            mask |= 1 << position[element]
        return mask

    def nonzero(self) -> Iterator[Tuple[int, Scalar]]:
        for mask in np.flatnonzero(self.values):
            yield int(mask), self.values[mask]

    def copy(self) -> "SubsetTable":
        return SubsetTable(self.ground, self.values.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetTable):
            return NotImplemented
        return self.ground == other.ground and all(a == b for a, b in zip(self.values, other.values))

    def __repr__(self) -> str:
        return f"SubsetTable(width={self.width}, nonzero={int(np.count_nonzero(self.values))})"


def _require_common_ground(tables: Sequence[SubsetTable]) -> Tuple[Hashable, ...]:
    if not tables:
        raise create_kernel_error(ErrorCode.GROUND_SET_MISMATCH, "convolution of an empty list of tables")
    ground = tables[0].ground
    for table in tables[1:]:
        if table.ground != ground:
            raise create_kernel_error(
                ErrorCode.GROUND_SET_MISMATCH,
                "tables do not share a ground set",
                details={"expected": list(ground), "found": list(table.ground)},
            )
    return ground


def popcounts(width: int) -> np.ndarray:
    """원소 width 개 기저 집합의 모든 마스크 S 에 대한 |S|"""
    masks = np.arange(1 << width, dtype=np.int64)
    rank = np.zeros(1 << width, dtype=np.int64)
    for bit in range(width):
        rank += (masks >> bit) & 1
    return rank


def zeta_transform(values: np.ndarray, width: int) -> np.ndarray:
    """f^(S) = S 의 부분집합 T 에 대한 f(T) 의 합 (복사본에서 계산)"""
    out = values.copy()
    for bit in range(width):
        view = out.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += view[:, 0, :]
    return out


def mobius_transform(values: np.ndarray, width: int) -> np.ndarray:
    """zeta_transform 의 역변환"""
    out = values.copy()
    for bit in range(width):
        view = out.reshape(-1, 2, 1 << bit)
        view[:, 1, :] -= view[:, 0, :]
    return out


def ranked_zeta(table: SubsetTable, rank: Optional[np.ndarray] = None) -> List[np.ndarray]:
    """각 rank 슬라이스 f_k (|S| = k 로 제한한 f) 의 zeta 변환"""
    width = table.width
    rank = popcounts(width) if rank is None else rank
    layers = []
    for k in range(width + 1):
        layer = np.zeros(table.size, dtype=object)
        selected = rank == k
        layer[selected] = table.values[selected]
        layers.append(zeta_transform(layer, width))
    return layers


def ranked_mobius(layers: Sequence[np.ndarray], ground: Sequence[Hashable], rank: Optional[np.ndarray] = None) -> SubsetTable:
    """h(S) = moebius(h^_{|S|})(S)"""
    width = len(ground)
    rank = popcounts(width) if rank is None else rank
    out = np.zeros(1 << width, dtype=object)
    for k, layer in enumerate(layers):
        inverted = mobius_transform(layer, width)
        selected = rank == k
        out[selected] = inverted[selected]
    return SubsetTable(ground, out)


def subset_convolve_many(tables: Sequence[SubsetTable], counter: Optional[RingCounter] = None) -> SubsetTable:
    """
    k 겹 subset convolution: P(Y) = 서로소 Y_0 + ... + Y_k = Y 에 대한 prod f_i(Y_i) 의 합

    각 인자를 한 번씩 ranked zeta 변환하고, rank 다항식을 왼쪽부터 곱한 뒤
    (차수 |ground| 에서 절단) ranked Moebius 역변환 한 번으로 결과 복원.
    ring 연산만 사용.

    Args:
        tables: 공통 기저 집합 위의 인자들
        counter: ring 곱셈 카운터 (선택)

    Returns:
        SubsetTable: convolution 결과
    """
    ground = _require_common_ground(tables)
    if len(tables) == 1:
        return tables[0].copy()

    width = len(ground)
    size = 1 << width
    rank = popcounts(width)
    acc = ranked_zeta(tables[0], rank)
    for table in tables[1:]:
        nxt = ranked_zeta(table, rank)
        product = []
        for k in range(width + 1):
            layer = np.zeros(size, dtype=object)
            for j in range(k + 1):
                layer = layer + acc[j] * nxt[k - j]
            if counter is not None:
                counter.add((k + 1) * size)
            product.append(layer)
        acc = product
    return ranked_mobius(acc, ground, rank)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def signed_convolve(
    acc: SubsetTable,
    nxt: SubsetTable,
    sign_oracle: SignOracle,
    counter: Optional[RingCounter] = None,
) -> SubsetTable:
    """
    out(S) = 서로소 A + B = S 에 대한 sign_oracle(A, B) * acc(A) * nxt(B) 의 합

    서로소 쌍 직접 열거: 0 아닌 A 마다 0 아닌 B 목록과 여집합의 부분마스크 중
    더 작은 쪽을 순회.
    """
    ground = _require_common_ground([acc, nxt])
    full = (1 << len(ground)) - 1
    out = np.zeros(1 << len(ground), dtype=object)
    right = list(nxt.nonzero())
    right_values = nxt.values
    mults = 0

    for a, va in acc.nonzero():
        complement = full & ~a
        if len(right) <= (1 << complement.bit_count()):
            pairs = ((b, vb) for b, vb in right if not b & a)
        else:
            pairs = ((b, right_values[b]) for b in _submasks(complement) if right_values[b] != 0)
        for b, vb in pairs:
            term = va * vb
            mults += 1
            if sign_oracle(a, b) > 0:
                out[a | b] += term
            else:
                out[a | b] -= term

    if counter is not None:
        counter.add(mults)
    return SubsetTable(ground, out)
