"""
조노토프 모듈
조노토프 계, 간선 방향, 간선 / 좌표 그래프, 그리고
간선 방향이 적은 경우의 혼합 부피 알고리즘
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.modules.base_cases.subvalues import FunctionSignature
from app.modules.engines.engine_run import EngineStats
from app.modules.engines.generalized_engine import run_generalized
from app.modules.graphs.graphs import (
    COLUMN_PART,
    COORDINATE,
    ROW_PART,
    GraphKind,
    LabeledGraph,
    VertexLayout,
)
from app.modules.oracle.oracle import exact_determinant, naive_mixed_volume
from app.modules.shared.errors import ErrorCode, ParameterError, ZonotopeError, create_zonotope_error, handle_errors
from app.modules.shared.logger import get_zonotope_logger, log_execution_time
from app.modules.tensor_model.tensor import Scalar, SparseTensor, normalize_scalar
from app.modules.treedecomp.decomposition import TreeDecomposition, restrict, validate
from app.modules.treedecomp.heuristics import heuristic_decomposition

logger = get_zonotope_logger()

Vector = Tuple[Fraction, ...]
Direction = Tuple[int, ...]


class ZonotopeSystem:
    """
    R^n 안의 조노토프 n 개 z^i = sum_j [0,1] z^i_j

    생성자는 Fraction 튜플로 저장하고 영벡터 생성자는 버린다.
    """

    def __init__(self, zonotopes: Sequence[Sequence[Sequence]]):
        self.n = len(zonotopes)
        stored: List[Tuple[Vector, ...]] = []
        for i, generators in enumerate(zonotopes):
            kept = []
            for generator in generators:
                vector = tuple(Fraction(c) for c in generator)
                if len(vector) != self.n:
                    raise create_zonotope_error(
                        ErrorCode.ZONOTOPE_SYNTAX,
                        f"zonotope {i + 1} has a generator of dimension {len(vector)}, expected {self.n}",
                    )
                if any(vector):
                    kept.append(vector)
            stored.append(tuple(kept))
        self.zonotopes: Tuple[Tuple[Vector, ...], ...] = tuple(stored)

    def permuted(self, order: Sequence[int]) -> "ZonotopeSystem":
        return ZonotopeSystem([self.zonotopes[i] for i in order])

    def scaled(self, i: int, factor) -> "ZonotopeSystem":
        """조노토프 i 의 모든 생성자에 배수 곱하기"""
        return ZonotopeSystem(
            [
                [tuple(c * factor for c in g) for g in generators] if k == i else generators
                for k, generators in enumerate(self.zonotopes)
            ]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, ZonotopeSystem) and self.zonotopes == other.zonotopes

    def __repr__(self) -> str:
        return f"ZonotopeSystem(n={self.n}, generators={[len(z) for z in self.zonotopes]})"


def canonical_direction(vector: Sequence[Fraction]) -> Tuple[Direction, Fraction]:
    """
    vector = c * u 를 만족하는 원시 정수 방향 u (첫 0 아닌 성분이 양수) 와 c
    """
    scale = reduce(lcm, (Fraction(c).denominator for c in vector), 1)
    integral = [int(Fraction(c) * scale) for c in vector]
    divisor = reduce(gcd, (abs(c) for c in integral), 0)
    direction = [c // divisor for c in integral]
    first = next(c for c in direction if c != 0)
    if first < 0:
        direction = [-c for c in direction]
    pivot = next(k for k, c in enumerate(direction) if c != 0)
    return tuple(direction), Fraction(vector[pivot]) / direction[pivot]


@dataclass(frozen=True)
class DirectionIndex:
    """
    중복 제거한 간선 방향 U 와 조노토프별 계수 c_u

    Attributes:
        directions: 정규 원시 방향 (처음 나온 순서)
        coefficients: coefficients[i][k] = directions[k] 위 조노토프 i 의 c
            (한 조노토프의 평행 생성자는 계수를 더해 병합)
    """
    directions: Tuple[Direction, ...]
    coefficients: Tuple[Dict[int, Fraction], ...]

    @property
    def extra(self) -> int:
        """d = |U| - n"""
        return len(self.directions) - len(self.coefficients)

    def coefficient_matrix(self, columns: Sequence[int]) -> SparseTensor:
        """C_W: 행 = 조노토프, 열 = 선택된 방향"""
        entries = {}
        for i, row in enumerate(self.coefficients):
            for j, k in enumerate(columns):
                value = row.get(k, 0)
                if value != 0:
                    entries[(i, j)] = value
        return SparseTensor((len(self.coefficients), len(columns)), entries)


def direction_index(system: ZonotopeSystem) -> DirectionIndex:
    """모든 생성자를 정규화하고 조노토프별로 평행한 것끼리 병합 (계수 합)"""
    position: Dict[Direction, int] = {}
    coefficients: List[Dict[int, Fraction]] = []
    for generators in system.zonotopes:
        row: Dict[int, Fraction] = {}
        for generator in generators:
            direction, c = canonical_direction(generator)
            k = position.setdefault(direction, len(position))
            row[k] = row.get(k, Fraction(0)) + c
        coefficients.append(row)
    directions = tuple(sorted(position, key=position.__getitem__))
    return DirectionIndex(directions, tuple(coefficients))


def edge_graph(system: ZonotopeSystem) -> LabeledGraph:
    """조노토프 Z 와 간선 방향 U 위의 이분 그래프"""
    index = direction_index(system)
    layout = VertexLayout([(ROW_PART, system.n), (COLUMN_PART, len(index.directions))])
    edges = [
        ((ROW_PART, i), (COLUMN_PART, k))
        for i, row in enumerate(index.coefficients)
        for k, c in row.items()
        if c != 0
    ]
    return LabeledGraph(GraphKind.EDGE, layout, edges)


def coordinates_graph(system: ZonotopeSystem) -> LabeledGraph:
    """조노토프마다 상수가 아닌 좌표 위의 클리크"""
    layout = VertexLayout([(COORDINATE, system.n)])
    edges = []
    for generators in system.zonotopes:
        support = sorted({k for g in generators for k, c in enumerate(g) if c != 0})
        edges.extend(((COORDINATE, x), (COORDINATE, y)) for x, y in combinations(support, 2))
    return LabeledGraph(GraphKind.COORDINATES, layout, edges)


def revolving_door(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """range(n) 의 k-부분집합. 연속한 부분집합은 원소 하나만 교환"""
    if k < 0 or k > n:
        return
    if k == 0:
        yield ()
        return
    if k == n:
        yield tuple(range(n))
        return
    yield from revolving_door(n - 1, k)
    for subset in reversed(list(revolving_door(n - 1, k - 1))):
        yield subset + (n - 1,)


def _relabel_columns(td: TreeDecomposition, columns: Sequence[int]) -> TreeDecomposition:
    position = {k: j for j, k in enumerate(columns)}
    bags = [
        {(part, position[i]) if part == COLUMN_PART else (part, i) for part, i in bag}
        for bag in td.bags
    ]
    return TreeDecomposition(bags, td.parent, GraphKind.BIPARTITE)


@log_execution_time
@handle_errors(ZonotopeError)
def mixed_volume_with_stats(
    system: ZonotopeSystem,
    decomposition: Optional[TreeDecomposition] = None,
    method: Optional[str] = None,
    max_extra_directions: Optional[int] = None,
    threads: Optional[int] = None,
) -> Tuple[Scalar, EngineStats]:
    """
    MVol = U 의 n-부분집합 W 에 대한 |det(W)| * Perm(C_W) 의 합

    Args:
        system: 정규 방향 위 계수가 음이 아닌 R^n 안의 조노토프 n 개
        decomposition: 간선 그래프의 분해 (없으면 휴리스틱)
        method: 휴리스틱 이름
        max_extra_directions: d = |U| - n 의 상한 (기본값 MAX_EXTRA_DIRECTIONS)
        threads: 엔진 동시 실행 수

    Returns:
        (정확한 혼합 부피, 퍼머넌트 평가들의 통계 합)

    Raises:
        ZonotopeError: 음수 계수, 상한을 넘는 d
    """
    stats = EngineStats()
    cap = settings.MAX_EXTRA_DIRECTIONS if max_extra_directions is None else max_extra_directions
    # 부호 검사는 병합 전, 생성자 단위
    for i, generators in enumerate(system.zonotopes):
        for generator in generators:
            direction, c = canonical_direction(generator)
            if c < 0:
                raise create_zonotope_error(
                    ErrorCode.NEGATIVE_COEFFICIENT,
                    f"zonotope {i + 1} has coefficient {c} on direction {direction}",
                    details={"zonotope": i + 1, "direction": list(direction)},
                )
    index = direction_index(system)

    n = system.n
    if len(index.directions) < n:
        return 0, stats
    if index.extra > cap:
        raise create_zonotope_error(
            ErrorCode.DIRECTION_CAP_EXCEEDED,
            f"{len(index.directions)} edge directions give d = {index.extra}, cap is {cap}",
        )

    graph = edge_graph(system)
    if decomposition is None:
        decomposition = heuristic_decomposition(graph, method or settings.DEFAULT_HEURISTIC)
    else:
        decomposition = decomposition.with_kind(GraphKind.EDGE)
        validate(decomposition, graph)
    stats.nodes = decomposition.node_count
    stats.max_bag = decomposition.max_bag_size
    stats.width_single_part = decomposition.width_single_part
    stats.width_multi_part = decomposition.width_multi_part

    zonotopes = [(ROW_PART, i) for i in range(n)]
    permanent = FunctionSignature.permanent()
    total = 0
    terms = 0
    for subset in revolving_door(len(index.directions), n):
        det = exact_determinant([index.directions[k] for k in subset])
        if det == 0:
            continue
        matrix = index.coefficient_matrix(subset)
        keep = zonotopes + [(COLUMN_PART, k) for k in subset]
        td = _relabel_columns(restrict(decomposition, keep), subset)
        run = run_generalized(matrix, permanent, td, threads)
        total += abs(det) * run.result
        stats.ring_mults += run.stats.ring_mults + 1
        stats.peak_table_cells = max(stats.peak_table_cells, run.stats.peak_table_cells)
        terms += 1

    logger.info("Mixed volume computed", n=n, directions=len(index.directions), nonsingular_terms=terms)
    return normalize_scalar(total), stats


def mixed_volume_few_directions(
    system: ZonotopeSystem,
    decomposition: Optional[TreeDecomposition] = None,
    method: Optional[str] = None,
    max_extra_directions: Optional[int] = None,
    threads: Optional[int] = None,
) -> Scalar:
    """간선 방향 수가 n 보다 최대 상한만큼 많은 조노토프 n 개의 정확한 MVol"""
    value, _ = mixed_volume_with_stats(system, decomposition, method, max_extra_directions, threads)
    return value


def subset_sum_instance(a: Sequence[int], delta: int) -> ZonotopeSystem:
    """
    R^n 안의 조노토프 n = |a| + 1 개:

        z^1 = [0,1](a_1 e_n + e_1) + [0,1] e_1
        z^i = [0,1](a_i e_n + e_i - e_{i-1}) + [0,1](e_i - e_{i-1})
        z^n = [0,1](delta e_n - e_{n-1})
    """
    if len(a) < 1:
        raise ParameterError("subset-sum instance needs at least one value")
    n = len(a) + 1

    def vector(**coords) -> List[int]:
        v = [0] * n
        for k, c in coords.items():
            v[int(k[1:])] += c
        return v

    last = n - 1
    zonotopes = []
    for i, value in enumerate(a):
        if i == 0:
            step = vector(**{"e0": 1})
        else:
            step = vector(**{f"e{i}": 1, f"e{i - 1}": -1})
        with_value = list(step)
        with_value[last] += value
        zonotopes.append([with_value, step])
    final = [0] * n
    final[last] += delta
    final[last - 1] -= 1
    zonotopes.append([final])
    return ZonotopeSystem(zonotopes)


def count_zero_sum_subsets(a: Sequence[int]) -> int:
    """naive 공식으로 (1/2) MVol(delta=-1) - MVol(delta=0) + (1/2) MVol(delta=1)"""
    combination = (
        Fraction(naive_mixed_volume(subset_sum_instance(a, -1)), 2)
        - naive_mixed_volume(subset_sum_instance(a, 0))
        + Fraction(naive_mixed_volume(subset_sum_instance(a, 1)), 2)
    )
    if combination.denominator != 1:
        raise create_zonotope_error(ErrorCode.INTERNAL_ERROR, f"zero-sum combination {combination} is not integral")
    return int(combination)
