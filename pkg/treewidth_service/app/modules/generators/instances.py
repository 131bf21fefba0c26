"""
인스턴스 생성기
희소 구조가 알려진 행렬 / 텐서 / 조노토프 계열
"""

import random
from itertools import product
from typing import Dict, Optional, Sequence, Tuple

from app.modules.graphs.graphs import COLUMN_PART, COORDINATE, ROW_PART, GraphKind
from app.modules.shared.errors import ParameterError
from app.modules.shared.logger import logger as service_logger
from app.modules.tensor_model.tensor import Index, Scalar, SparseTensor
from app.modules.treedecomp.decomposition import TreeDecomposition
from app.modules.zonotopes.zonotopes import ZonotopeSystem, canonical_direction

logger = service_logger.get_module_logger("generators")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def _nonzero(rng: random.Random, low: int, high: int) -> int:
    _require(low <= high and (low, high) != (0, 0), f"value range [{low}, {high}] has no nonzero integer")
    while True:
        value = rng.randint(low, high)
        if value != 0:
            return value


def _path(bags) -> Tuple[list, list]:
    bags = list(bags)
    return bags, [None] + list(range(len(bags) - 1))


def band_matrix(
    n: int,
    w1: int,
    w2: int,
    rng: Optional[random.Random] = None,
    low: int = 1,
    high: int = 9,
) -> SparseTensor:
    """
    -w1 <= j - i <= w2 인 위치에서만 0 이 아닌 band 행렬

    Args:
        n: 행렬 크기
        w1: 아래쪽 대역폭
        w2: 위쪽 대역폭
        rng: 값 생성기 (없으면 Random(0))
        low, high: 값 범위 (양끝 포함, 0 제외)
    """
    _require(n >= 0 and w1 >= 0 and w2 >= 0, "band parameters must be nonnegative")
    rng = rng or random.Random(0)
    entries = {
        (i, j): _nonzero(rng, low, high)
        for i in range(n)
        for j in range(max(0, i - w1), min(n, i + w2 + 1))
    }
    return SparseTensor((n, n), entries)


def band_decompositions(n: int, w1: int, w2: int) -> Tuple[TreeDecomposition, TreeDecomposition, TreeDecomposition]:
    """
    band 행렬의 명시적 경로 분해

    Returns:
        (열 그래프 분해, 대칭화 그래프 분해, 이분 그래프 분해)
    """
    _require(n >= 1, "band decompositions need n >= 1")
    span = w1 + w2
    starts = range(max(1, n - span))
    column_bags, parent = _path(
        {(COLUMN_PART, j) for j in range(s, min(n, s + span + 1))} for s in starts
    )
    column_td = TreeDecomposition(column_bags, parent, GraphKind.COLUMN)

    w = max(w1, w2)
    symmetric_bags, parent = _path(
        {(COORDINATE, i) for i in range(s, min(n, s + w + 1))} for s in range(max(1, n - w))
    )
    symmetric_td = TreeDecomposition(symmetric_bags, parent, GraphKind.SYMMETRIZED)

    bipartite_bags, parent = _path(
        {(ROW_PART, a)} | {(COLUMN_PART, j) for j in range(max(0, a - w1), min(n, a + w2 + 1))}
        for a in range(n)
    )
    bipartite_td = TreeDecomposition(bipartite_bags, parent, GraphKind.BIPARTITE)
    return column_td, symmetric_td, bipartite_td


def grid_matrix(m: int) -> SparseTensor:
    """
    행마다 0 아닌 항목이 최대 두 개이고 대칭화 그래프가 m x m 격자를 포함하는 n = m^2 행렬

        M[a_i, x_{i+1}] = 1        if m does not divide i
        M[a_i, x_{i+m}] = 2        if 1 <= i <= n - m
        M[a_{(m-i+1)m}, x_i] = 3   if 1 <= i <= m
        M[a_{n-i}, x_{im+1}] = 3   if 1 <= i < m

    (규칙의 인덱스는 1-based.)
    """
    _require(m >= 1, "grid size must be positive")
    n = m * m
    entries: Dict[Index, Scalar] = {}
    for i in range(1, n + 1):
        if i % m and i + 1 <= n:
            entries[(i - 1, i)] = 1
        if i <= n - m:
            entries[(i - 1, i + m - 1)] = 2
    for i in range(1, m + 1):
        entries[((m - i + 1) * m - 1, i - 1)] = 3
    for i in range(1, m):
        entries[(n - i - 1, i * m)] = 3
    return SparseTensor((n, n), entries)


def two_per_row_matrix(n: int, rng: Optional[random.Random] = None, low: int = 1, high: int = 9) -> SparseTensor:
    """무작위 순열 + 행마다 항목 하나 추가 (완전 매칭이 항상 존재)"""
    _require(n >= 1, "matrix size must be positive")
    rng = rng or random.Random(0)
    permutation = list(range(n))
    rng.shuffle(permutation)
    entries: Dict[Index, Scalar] = {}
    for a, x in enumerate(permutation):
        entries[(a, x)] = _nonzero(rng, low, high)
        entries[(a, rng.randrange(n))] = _nonzero(rng, low, high)
    return SparseTensor((n, n), entries)


def arrow_matrix(n: int, diagonal: Scalar = 1, first_row: Scalar = 1) -> SparseTensor:
    """대각 + 꽉 찬 첫 행: 열 그래프는 완전 그래프, 이분 그래프는 트리"""
    _require(n >= 1, "matrix size must be positive")
    entries: Dict[Index, Scalar] = {(i, i): diagonal for i in range(n)}
    entries.update({(0, j): first_row for j in range(1, n)})
    return SparseTensor((n, n), entries)


def block_example(values: Optional[Dict[Index, Scalar]] = None) -> Tuple[SparseTensor, TreeDecomposition]:
    """
    열 삼각형 세 개로 이루어진 5 x 5 행렬과 3-노드 열 분해

    행 support: a1, a2 는 {x1, x3, x4}, a3 는 {x2, x3, x4}, a4, a5 는 {x2, x3, x5}.
    분해: {x1,x3,x4} - {x2,x3,x4} (루트) - {x2,x3,x5}.
    """
    supports = [(0, 2, 3), (0, 2, 3), (1, 2, 3), (1, 2, 4), (1, 2, 4)]
    pattern = [(a, x) for a, support in enumerate(supports) for x in support]
    if values is None:
        values = {index: k + 1 for k, index in enumerate(pattern)}
    _require(set(values) == set(pattern), "block example values must cover exactly the 15 pattern positions")
    matrix = SparseTensor((5, 5), values)
    bags = [
        {(COLUMN_PART, 0), (COLUMN_PART, 2), (COLUMN_PART, 3)},
        {(COLUMN_PART, 1), (COLUMN_PART, 2), (COLUMN_PART, 3)},
        {(COLUMN_PART, 1), (COLUMN_PART, 2), (COLUMN_PART, 4)},
    ]
    return matrix, TreeDecomposition(bags, [1, None, 1], GraphKind.COLUMN)


def random_sparse_tensor(
    order: int,
    n: int,
    density: float,
    rng: Optional[random.Random] = None,
    low: int = -5,
    high: int = 5,
) -> SparseTensor:
    """n^order 개 위치가 각각 확률 `density` 로 0 이 아님"""
    _require(order >= 2, "tensor order must be at least 2")
    _require(0.0 <= density <= 1.0, "density must lie in [0, 1]")
    rng = rng or random.Random(0)
    entries = {
        index: _nonzero(rng, low, high)
        for index in product(range(n), repeat=order)
        if rng.random() < density
    }
    return SparseTensor((n,) * order, entries)


def identical_slices(matrix: Sequence[Sequence[Scalar]]) -> SparseTensor:
    """모든 a 에 대해 T[a, i, j] = matrix[i][j]. D(A, ..., A) = n! det(A)"""
    n = len(matrix)
    entries = {
        (a, i, j): matrix[i][j]
        for a in range(n)
        for i in range(n)
        for j in range(n)
        if matrix[i][j] != 0
    }
    return SparseTensor((n, n, n), entries)


def diagonal_slices(diagonals: Sequence[Sequence[Scalar]]) -> SparseTensor:
    """T[a, i, i] = diagonals[a][i]. D(diag_1, ..., diag_n) = Perm(diagonals)"""
    n = len(diagonals)
    entries = {
        (a, i, i): row[i]
        for a, row in enumerate(diagonals)
        for i in range(n)
        if row[i] != 0
    }
    return SparseTensor((n, n, n), entries)


def few_directions_system(a: Sequence[Scalar], b: Sequence[Scalar]) -> ZonotopeSystem:
    """e = (1, ..., 1) 일 때 z^i = [0,1] a_i e_i + [0,1] b_i e. 간선 그래프는 e 를 중심으로 한 별"""
    _require(len(a) == len(b) and len(a) >= 1, "a and b must be nonempty and of equal length")
    n = len(a)
    zonotopes = []
    for i in range(n):
        unit = [0] * n
        unit[i] = a[i]
        zonotopes.append([unit, [b[i]] * n])
    return ZonotopeSystem(zonotopes)


def random_zonotope_system(
    n: int,
    extra: int,
    rng: Optional[random.Random] = None,
    generators_per_zonotope: int = 2,
) -> ZonotopeSystem:
    """
    단위 방향 + 무작위 정규 방향 `extra` 개, 계수는 양수

    간선 방향 수는 최대 n + extra.
    """
    _require(n >= 1 and extra >= 0, "random zonotope system needs n >= 1 and extra >= 0")
    rng = rng or random.Random(0)
    directions = []
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        directions.append(tuple(unit))
    while len(directions) < n + extra:
        vector = [rng.randint(-2, 2) for _ in range(n)]
        if any(vector):
            direction, _ = canonical_direction(vector)
            directions.append(direction)

    zonotopes = []
    for i in range(n):
        chosen = {i} | {rng.randrange(len(directions)) for _ in range(generators_per_zonotope - 1)}
        zonotopes.append([[rng.randint(1, 3) * c for c in directions[k]] for k in sorted(chosen)])
    system = ZonotopeSystem(zonotopes)
    logger.debug("Generated zonotope system", n=n, extra=extra)
    return system
