"""
열 그래프 분해 위의 퍼머넌트

P_t(Y) = perm(A_{T_t}, Y + Delta_t) 는 Q_t(Y) = perm(A_t, Y) 와
Delta_j = chi(c_j) - chi(t) 로 재색인한 자식 테이블을 chi(t) 위의
subset convolution 한 번으로 결합해 만든다.
"""

from typing import Dict, Optional

from app.modules.base_cases.subvalues import FunctionSignature, all_subvalues
from app.modules.engines.engine_run import EngineRun, sweep
from app.modules.graphs.graphs import COLUMN_PART, GraphKind, column_graph
from app.modules.shared.errors import ErrorCode, create_engine_error
from app.modules.shared.logger import get_engine_logger
from app.modules.subsetconv.convolution import RingCounter, SubsetTable, subset_convolve_many
from app.modules.tensor_model.tensor import AxisSubsetSelection, Scalar, SparseTensor, normalize_scalar, subtensor
from app.modules.treedecomp.decomposition import TreeDecomposition, check_width_cap, validate
from app.modules.treedecomp.lifts import assign_rows

logger = get_engine_logger()

PERMANENT = FunctionSignature.permanent()


class ColumnEngine:
    """열 그래프 분해 위의 순회 (퍼머넌트 전용)"""

    def __init__(self, matrix: SparseTensor, decomposition: TreeDecomposition):
        self.matrix = matrix
        self.td = decomposition
        self.assignment = assign_rows(decomposition, matrix)
        self.columns = [tuple(decomposition.part(node, COLUMN_PART)) for node in range(decomposition.node_count)]

    def node_table(self, node: int, counter: RingCounter) -> SubsetTable:
        """chi(t) 위의 Q_t(Y) = perm(A_t, Y)"""
        rows = self.assignment.rows_at(node)
        columns = self.columns[node]
        ground = tuple((COLUMN_PART, x) for x in columns)
        if not rows:
            return SubsetTable.unit(ground)
        block = subtensor(self.matrix, AxisSubsetSelection((tuple(rows), columns)))
        table = all_subvalues(block, PERMANENT, counter)
        all_rows = (1 << len(rows)) - 1
        values = {
            mask >> len(rows): value
            for mask, value in table.values.items()
            if mask & all_rows == all_rows
        }
        return SubsetTable.from_dict(ground, values)

    def rekey_child(self, node: int, child: int, child_table: SubsetTable) -> SubsetTable:
        """chi(c) & chi(t) 안의 Y 에 대해 Q_c(Y) = P_c(Y + Delta)"""
        parent_position = {x: bit for bit, x in enumerate(self.columns[node])}
        delta_mask = 0
        bit_map = []
        for bit, x in enumerate(self.columns[child]):
            if x in parent_position:
                bit_map.append(1 << parent_position[x])
            else:
                bit_map.append(0)
                delta_mask |= 1 << bit
        values: Dict[int, Scalar] = {}
        for mask, value in child_table.nonzero():
            if mask & delta_mask != delta_mask:
                continue
            rest = mask ^ delta_mask
            target = 0
            while rest:
                low = rest & -rest
                target |= bit_map[low.bit_length() - 1]
                rest ^= low
            values[target] = value
        ground = tuple((COLUMN_PART, x) for x in self.columns[node])
        return SubsetTable.from_dict(ground, values)

    def step(self, node: int, child_tables: Dict[int, SubsetTable], counter: RingCounter) -> SubsetTable:
        tables = [self.node_table(node, counter)]
        for child in self.td.children[node]:
            tables.append(self.rekey_child(node, child, child_tables[child]))
        return subset_convolve_many(tables, counter)

    def run(self, threads: Optional[int] = None) -> EngineRun:
        run = EngineRun(self.matrix, PERMANENT, self.td, assignment=self.assignment)
        root_table = sweep(run, self.step, threads)
        run.result = normalize_scalar(root_table[(1 << len(self.columns[self.td.root])) - 1])
        logger.info(
            "Column engine finished",
            n=self.matrix.lengths[0],
            nodes=run.stats.nodes,
            width_single_part=run.stats.width_single_part,
            ring_mults=run.stats.ring_mults,
        )
        return run


def run_columns(
    matrix: SparseTensor,
    decomposition: TreeDecomposition,
    threads: Optional[int] = None,
    check: bool = True,
) -> EngineRun:
    if matrix.order != 2:
        raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "column engine computes matrix permanents only")
    if not matrix.is_square:
        raise create_engine_error(ErrorCode.NOT_SQUARE, f"matrix with lengths {matrix.lengths} is not square")
    if decomposition.kind != GraphKind.COLUMN:
        decomposition = decomposition.with_kind(GraphKind.COLUMN)
    if check:
        validate(decomposition, column_graph(matrix))
    check_width_cap(decomposition)
    return ColumnEngine(matrix, decomposition).run(threads)


def cols_perm(matrix: SparseTensor, decomposition: TreeDecomposition, threads: Optional[int] = None) -> Scalar:
    """
    열 그래프 분해로 Perm(M) 계산

    Args:
        matrix: 정사각 2차 텐서
        decomposition: column_graph(matrix) 의 분해

    Returns:
        정확한 퍼머넌트
    """
    return run_columns(matrix, decomposition, threads).result
