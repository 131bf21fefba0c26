"""
희소 텐서 모듈
정확한 스칼라, 희소 텐서 데이터 모델, 부분 텐서 추출
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from app.modules.shared.errors import ErrorCode, create_tensor_error

Scalar = Union[int, Fraction]
Index = Tuple[int, ...]


def normalize_scalar(value: Scalar) -> Scalar:
    """분모가 1인 Fraction 은 int 로 축약 (출력이 정수로 유지됨)"""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    if isinstance(value, bool):
        return int(value)
    return value


def parse_scalar(token: str) -> Scalar:
    """
    정확한 스칼라 토큰 파싱

    Args:
        token: 정수 (`-12`) 또는 유리수 (`3/4`) 리터럴

    Returns:
        int 또는 Fraction
    """
    if "/" in token:
        numerator, denominator = token.split("/", 1)
        return normalize_scalar(Fraction(int(numerator), int(denominator)))
    return int(token)


def format_scalar(value: Scalar) -> str:
    """정확한 10진 표기, 진분수는 `p/q`"""
    value = normalize_scalar(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


class SparseTensor:
    """
    0 이 아닌 정확한 스칼라로 이루어진 (d+1)차 희소 배열

    인덱스는 내부적으로 0-based (파일은 1-based). 축 0 은 행 축 A,
    축 l >= 1 은 X^l. 생성 후 불변.
    """

    __slots__ = ("_lengths", "_entries", "_rows")

    def __init__(self, lengths: Sequence[int], entries: Mapping[Index, Scalar]):
        lengths = tuple(int(n) for n in lengths)
        if len(lengths) < 2:
            raise create_tensor_error(
                ErrorCode.WRONG_ORDER,
                f"tensor order must be at least 2, got {len(lengths)}",
            )
        if any(n < 0 for n in lengths):
            raise create_tensor_error(ErrorCode.INDEX_OUT_OF_BOUNDS, f"negative axis length in {lengths}")

        stored: Dict[Index, Scalar] = {}
        for index, value in entries.items():
            index = tuple(int(i) for i in index)
            if len(index) != len(lengths) or any(not 0 <= i < n for i, n in zip(index, lengths)):
                raise create_tensor_error(
                    ErrorCode.INDEX_OUT_OF_BOUNDS,
                    f"index {tuple(i + 1 for i in index)} outside lengths {lengths}",
                )
            if value == 0:
                raise create_tensor_error(
                    ErrorCode.ZERO_ENTRY,
                    f"zero-valued entry at {tuple(i + 1 for i in index)}",
                )
            stored[index] = normalize_scalar(value)

        self._lengths = lengths
        self._entries = MappingProxyType(stored)
        self._rows = None

    @classmethod
    def from_dense(cls, array) -> "SparseTensor":
        """조밀한 중첩 리스트 / numpy 배열에서 생성 (0 은 제외)"""
        dense = np.asarray(array, dtype=object)
        entries = {
            tuple(int(i) for i in index): value
            for index, value in np.ndenumerate(dense)
            if value != 0
        }
        return cls(dense.shape, entries)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return self._lengths

    @property
    def order(self) -> int:
        return len(self._lengths)

    @property
    def free_axes(self) -> int:
        """d = order - 1"""
        return len(self._lengths) - 1

    @property
    def entries(self) -> Mapping[Index, Scalar]:
        return self._entries

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def is_square(self) -> bool:
        return len(set(self._lengths)) == 1

    @property
    def n(self) -> int:
        """정사각 텐서의 공통 축 길이"""
        if not self.is_square:
            raise create_tensor_error(ErrorCode.NOT_SQUARE, f"tensor with lengths {self._lengths} is not square")
        return self._lengths[0]

    def get(self, index: Index) -> Scalar:
        return self._entries.get(tuple(index), 0)

    def rows(self) -> Mapping[int, List[Tuple[Index, Scalar]]]:
        """축 0 인덱스별 항목 묶음: a -> [((x_1..x_d), value)]"""
        if self._rows is None:
            grouped: Dict[int, List[Tuple[Index, Scalar]]] = {}
            for index in sorted(self._entries):
                grouped.setdefault(index[0], []).append((index[1:], self._entries[index]))
            self._rows = MappingProxyType(grouped)
        return self._rows

    def support(self, row: int) -> Tuple[int, ...]:
        """행렬 행의 X(a): 0 이 아닌 열 (정렬)"""
        return tuple(sorted({rest[0] for rest, _ in self.rows().get(row, [])}))

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self._lengths, dtype=object)
        for index, value in self._entries.items():
            dense[index] = value
        return dense

    def permute_indices(self, permutations: Sequence[Sequence[int]]) -> "SparseTensor":
        """모든 축에서 축 l 의 인덱스 i 를 permutations[l][i] 로 재배치"""
        return SparseTensor(
            self._lengths,
            {
                tuple(permutations[axis][i] for axis, i in enumerate(index)): value
                for index, value in self._entries.items()
            },
        )

    def scaled_slice(self, axis: int, index: int, factor: Scalar) -> "SparseTensor":
        """한 슬라이스에 0 이 아닌 배수 곱하기"""
        return SparseTensor(
            self._lengths,
            {
                key: (value * factor if key[axis] == index else value)
                for key, value in self._entries.items()
            },
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self._lengths == other._lengths and dict(self._entries) == dict(other._entries)

    def __hash__(self):
        return hash((self._lengths, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"SparseTensor(lengths={self._lengths}, nnz={self.nnz})"


@dataclass(frozen=True)
class AxisSubsetSelection:
    """축마다 정렬된 인덱스 부분집합 하나: (D, Y^1, ..., Y^d)"""

    subsets: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, subsets: Iterable[Iterable[int]]) -> "AxisSubsetSelection":
        return cls(tuple(tuple(sorted(set(int(i) for i in subset))) for subset in subsets))

    @classmethod
    def full(cls, tensor: SparseTensor) -> "AxisSubsetSelection":
        return cls(tuple(tuple(range(n)) for n in tensor.lengths))

    def validate(self, tensor: SparseTensor) -> None:
        if len(self.subsets) != tensor.order:
            raise create_tensor_error(
                ErrorCode.WRONG_ORDER,
                f"selection has {len(self.subsets)} axes, tensor has {tensor.order}",
            )
        for axis, (subset, n) in enumerate(zip(self.subsets, tensor.lengths)):
            if any(not 0 <= i < n for i in subset):
                raise create_tensor_error(
                    ErrorCode.INDEX_OUT_OF_BOUNDS,
                    f"selection on axis {axis} leaves 0..{n - 1}",
                )

    def compose(self, inner: "AxisSubsetSelection") -> "AxisSubsetSelection":
        """`self` 적용 후 그 결과에 `inner` 를 적용한 것과 같은 선택"""
        return AxisSubsetSelection(
            tuple(tuple(outer[i] for i in sub) for outer, sub in zip(self.subsets, inner.subsets))
        )


def subtensor(tensor: SparseTensor, selection: AxisSubsetSelection) -> SparseTensor:
    """
    선택된 인덱스 집합으로 텐서 제한

    Args:
        tensor: 원본 텐서
        selection: 축별 정렬된 부분집합

    Returns:
        SparseTensor: 축마다 순서를 유지하며 0..|subset|-1 로 재색인
    """
    selection.validate(tensor)
    positions = [{index: pos for pos, index in enumerate(subset)} for subset in selection.subsets]
    entries: Dict[Index, Scalar] = {}
    for index, value in tensor.entries.items():
        mapped = []
        for axis, i in enumerate(index):
            pos = positions[axis].get(i)
            if pos is None:
                break
            mapped.append(pos)
        else:
            entries[tuple(mapped)] = value
    return SparseTensor(tuple(len(subset) for subset in selection.subsets), entries)
