"""
행 배정과 열 / 대칭화 분해의 이분 그래프 변환
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from app.modules.graphs.graphs import (
    COLUMN_PART,
    COORDINATE,
    ROW_PART,
    GraphKind,
    bipartite_graph,
)
from app.modules.shared.errors import ErrorCode, create_decomposition_error
from app.modules.shared.logger import get_decomposition_logger
from app.modules.tensor_model.tensor import Index, SparseTensor
from app.modules.treedecomp.decomposition import TreeDecomposition, WidthConvention, validate

logger = get_decomposition_logger()


@dataclass(frozen=True)
class RowAssignment:
    """
    행마다 (열 분해) 또는 0 아닌 항목마다 (다분 분해) 하나의 노드

    Attributes:
        rows: 행 a -> X(a) 를 포함하는 노드
        entries: 항목 인덱스 -> 모든 좌표를 포함하는 노드
    """
    rows: Dict[int, int] = field(default_factory=dict)
    entries: Dict[Index, int] = field(default_factory=dict)

    def rows_at(self, node: int) -> List[int]:
        """A_t (정렬)"""
        return sorted(a for a, t in self.rows.items() if t == node)

    def entries_at(self, node: int) -> List[Index]:
        return sorted(e for e, t in self.entries.items() if t == node)


def assign_rows(td: TreeDecomposition, tensor: SparseTensor) -> RowAssignment:
    """
    결정적 배정: 클리크를 포함하는 bag 중 후위 순서상 가장 앞선 노드

    Args:
        td: 검증된 분해 (열 그래프, 또는 이분 / 다분 그래프)
        tensor: 분해 대상 텐서

    Returns:
        RowAssignment: support 가 빈 행은 루트로

    Raises:
        DecompositionError: 포함하는 bag 없음 (잘못된 분해)
    """
    rank = {node: i for i, node in enumerate(td.post_order())}
    occurrences: Dict[tuple, List[int]] = {}
    for node, bag in enumerate(td.bags):
        for vertex in bag:
            occurrences.setdefault(vertex, []).append(node)

    def place(members: frozenset, what: str) -> int:
        if not members:
            return td.root
        anchor = min(members)
        candidates = [t for t in occurrences.get(anchor, []) if members <= td.bags[t]]
        if not candidates:
            raise create_decomposition_error(
                ErrorCode.NO_CONTAINING_BAG,
                f"no bag contains the clique of {what}",
                details={"clique": sorted(members)},
            )
        return min(candidates, key=rank.__getitem__)

    if td.kind == GraphKind.COLUMN:
        rows = {}
        for a in range(tensor.lengths[0]):
            support = frozenset((COLUMN_PART, x) for x in tensor.support(a))
            rows[a] = place(support, f"row {a + 1}")
        return RowAssignment(rows=rows)

    entries = {}
    for index in sorted(tensor.entries):
        clique = frozenset((axis, i) for axis, i in enumerate(index))
        entries[index] = place(clique, f"entry {tuple(i + 1 for i in index)}")
    return RowAssignment(entries=entries)


def lift_column_to_bipartite(td_x: TreeDecomposition, matrix: SparseTensor) -> TreeDecomposition:
    """
    열 그래프의 각 노드를 배정된 행마다 chi(t) + {a_j} 노드 하나씩인 경로로 교체

    Args:
        td_x: `matrix` 열 그래프의 분해
        matrix: 2차 텐서

    Returns:
        검증된 이분 그래프 분해 (multi-part 규약)
    """
    assignment = assign_rows(td_x, matrix)

    bags: List[frozenset] = []
    parent: List[Optional[int]] = []
    head: Dict[int, int] = {}
    for node in reversed(td_x.post_order()):  # 부모가 자식보다 먼저
        columns = td_x.bags[node]
        up = td_x.parent[node]
        attach = None if up is None else head[up]
        rows = assignment.rows_at(node)
        if not rows:
            head[node] = len(bags)
            bags.append(columns)
            parent.append(attach)
            continue
        for j, a in enumerate(rows):
            if j == 0:
                head[node] = len(bags)
            bags.append(columns | {(ROW_PART, a)})
            parent.append(attach)
            attach = len(bags) - 1

    lifted = TreeDecomposition(bags, parent, GraphKind.BIPARTITE, WidthConvention.MULTI_PART)
    validate(lifted, bipartite_graph(matrix))
    logger.debug("Lifted column decomposition", nodes=lifted.node_count, width=lifted.width)
    return lifted


def lift_symmetrized_to_bipartite(td_s: TreeDecomposition) -> TreeDecomposition:
    """mu(t) = {a_i : i in iota(t)} + {x_i : i in iota(t)}"""
    bags = []
    for bag in td_s.bags:
        indices = [i for part, i in bag if part == COORDINATE]
        bags.append({(ROW_PART, i) for i in indices} | {(COLUMN_PART, i) for i in indices})
    return TreeDecomposition(bags, td_s.parent, GraphKind.BIPARTITE, WidthConvention.MULTI_PART)
