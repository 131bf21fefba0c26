"""
함수 디스패처: 이름 -> signature, 분해 출처 -> 엔진
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import networkx as nx

from app.config.settings import settings
from app.modules.base_cases.subvalues import FunctionSignature
from app.modules.engines.column_engine import run_columns
from app.modules.engines.engine_run import EngineStats
from app.modules.engines.generalized_engine import run_generalized
from app.modules.graphs.graphs import GraphKind, column_graph, multipartite_graph, symmetrized_graph
from app.modules.oracle.oracle import exact_determinant, naive_generalized, ryser_permanent
from app.modules.shared.errors import EngineError, ErrorCode, create_engine_error, handle_errors
from app.modules.shared.logger import get_engine_logger, log_execution_time
from app.modules.tensor_model.tensor import Scalar, SparseTensor
from app.modules.treedecomp.decomposition import TreeDecomposition, validate
from app.modules.treedecomp.heuristics import heuristic_decomposition
from app.modules.treedecomp.lifts import lift_column_to_bipartite, lift_symmetrized_to_bipartite

logger = get_engine_logger()

FUNCTIONS = ("perm", "det", "disc", "hyperdet", "mdperm")
ENGINES = ("auto", "generalized", "columns")


def signature_for(function: str, tensor: SparseTensor) -> FunctionSignature:
    """
    함수 이름을 signature 로 변환하고 텐서 차수 검사

    Raises:
        EngineError: 알 수 없는 함수 또는 맞지 않는 차수
    """
    order = tensor.order
    if function == "perm":
        if order != 2:
            raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "permanent requires a matrix; use mdperm for tensors")
        return FunctionSignature.permanent()
    if function == "det":
        if order != 2:
            raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "determinant requires a matrix")
        return FunctionSignature.determinant()
    if function == "disc":
        if order != 3:
            raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "mixed discriminant requires tensor order 3")
        return FunctionSignature.mixed_discriminant()
    if function == "hyperdet":
        if order % 2:
            raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "hyperdeterminant requires even tensor order")
        return FunctionSignature.hyperdeterminant(order - 1)
    if function == "mdperm":
        return FunctionSignature.multidimensional_permanent(order - 1)
    raise create_engine_error(
        ErrorCode.INCOMPATIBLE_FUNCTION, f"unknown function '{function}', expected one of {FUNCTIONS}"
    )


@dataclass
class DecompositionSource:
    """
    분해의 출처

    Attributes:
        method: 분해가 주어지지 않을 때 쓰는 휴리스틱
        decomposition: 주어진 분해 (있으면)
        graph_kind: 주어진 분해의 대상 그래프
        engine: "auto", "generalized", "columns" 중 하나
    """
    method: str = field(default_factory=lambda: settings.DEFAULT_HEURISTIC)
    decomposition: Optional[TreeDecomposition] = None
    graph_kind: GraphKind = GraphKind.BIPARTITE
    engine: str = "auto"

    @classmethod
    def heuristic(cls, method: Optional[str] = None, engine: str = "auto") -> "DecompositionSource":
        return cls(method=method or settings.DEFAULT_HEURISTIC, engine=engine)

    @classmethod
    def supplied(cls, decomposition: TreeDecomposition, graph_kind: GraphKind, engine: str = "auto") -> "DecompositionSource":
        return cls(decomposition=decomposition, graph_kind=graph_kind, engine=engine)


@dataclass
class ComputeResult:
    """compute 호출 한 번의 값과 순회 통계"""
    function: str
    tensor: SparseTensor
    value: Scalar
    engine: str
    stats: EngineStats
    decomposition: Optional[TreeDecomposition] = None
    short_circuit: Optional[str] = None

    def stats_dict(self) -> Dict[str, Any]:
        """{function, n, order, width_multi_part, nodes, ring_mults, result}"""
        return {
            "function": self.function,
            "n": self.tensor.lengths[0],
            "order": self.tensor.order,
            "width_multi_part": self.stats.width_multi_part,
            "nodes": self.stats.nodes,
            "ring_mults": self.stats.ring_mults,
            "result": str(self.value),
        }


def has_structural_matching(tensor: SparseTensor) -> bool:
    """행 -> 각 축 사영마다 완전 매칭 존재 여부 (0 아닌 값의 필요 조건)"""
    n = tensor.lengths[0]
    for axis in range(1, tensor.order):
        # 단위 용량 네트워크의 최대 유량 = 최대 매칭
        network = nx.DiGraph()
        network.add_nodes_from(("source", "sink"))
        network.add_edges_from(("source", ("a", a)) for a in range(n))
        network.add_edges_from((("x", x), "sink") for x in range(tensor.lengths[axis]))
        network.add_edges_from((("a", index[0]), ("x", index[axis])) for index in tensor.entries)
        nx.set_edge_attributes(network, 1, "capacity")
        if nx.maximum_flow_value(network, "source", "sink") != n:
            return False
    return True


def _pick_engine(function: str, tensor: SparseTensor, source: DecompositionSource):
    """열 / 대칭화 분해를 변환한 뒤 (엔진 이름, 분해) 반환"""
    if source.engine not in ENGINES:
        raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, f"unknown engine '{source.engine}'")
    if source.engine == "columns" and function != "perm":
        raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "the column engine computes permanents only")

    td = source.decomposition
    if td is None:
        if source.engine == "columns":
            return "columns", heuristic_decomposition(column_graph(tensor), source.method)
        return "generalized", heuristic_decomposition(multipartite_graph(tensor), source.method)

    kind = source.graph_kind
    if kind == GraphKind.COLUMN:
        if tensor.order != 2:
            raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "column decompositions describe matrices only")
        td = td.with_kind(GraphKind.COLUMN)
        if function == "perm" and source.engine != "generalized":
            return "columns", td
        validate(td, column_graph(tensor))
        return "generalized", lift_column_to_bipartite(td, tensor)
    if kind == GraphKind.SYMMETRIZED:
        td = td.with_kind(GraphKind.SYMMETRIZED)
        validate(td, symmetrized_graph(tensor))
        lifted = lift_symmetrized_to_bipartite(td)
        if source.engine == "columns":
            raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "symmetrized decompositions feed the generalized engine")
        return "generalized", lifted
    if source.engine == "columns":
        raise create_engine_error(ErrorCode.INCOMPATIBLE_FUNCTION, "the column engine needs a column-graph decomposition")
    return "generalized", td.with_kind(multipartite_graph(tensor).kind)


@log_execution_time
@handle_errors(EngineError)
def compute(
    function: str,
    tensor: SparseTensor,
    source: Optional[DecompositionSource] = None,
    threads: Optional[int] = None,
) -> ComputeResult:
    """
    희소 텐서에서 perm / det / disc / hyperdet / mdperm 계산

    Args:
        function: FUNCTIONS 중 하나
        tensor: 입력 텐서
        source: 분해 출처 (기본값은 휴리스틱)
        threads: 형제 서브트리 동시 실행 수

    Returns:
        ComputeResult: 정확한 값과 순회 통계
    """
    source = source or DecompositionSource.heuristic()
    signature = signature_for(function, tensor)

    if not tensor.is_square:
        logger.warning("Non-square input, value is 0", lengths=tensor.lengths)
        return ComputeResult(function, tensor, 0, "none", EngineStats(), short_circuit="non-square")
    if tensor.lengths[0] > 0 and not has_structural_matching(tensor):
        logger.info("No structural perfect matching, value is 0", function=function)
        return ComputeResult(function, tensor, 0, "none", EngineStats(), short_circuit="no-matching")

    engine, td = _pick_engine(function, tensor, source)
    if engine == "columns":
        run = run_columns(tensor, td, threads)
    else:
        run = run_generalized(tensor, signature, td, threads)
    return ComputeResult(function, tensor, run.result, engine, run.stats, decomposition=td)


def reference_value(function: str, tensor: SparseTensor) -> Scalar:
    """같은 함수의 전수 계산 값 (`--oracle` 교차 검증)"""
    signature = signature_for(function, tensor)
    if not tensor.is_square:
        return 0
    if function == "perm":
        return ryser_permanent(tensor)
    if function == "det":
        return exact_determinant(tensor)
    return naive_generalized(tensor, signature)
