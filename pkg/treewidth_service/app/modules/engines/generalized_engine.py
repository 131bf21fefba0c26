"""
일반 (d+1)-분 그래프 엔진

퍼머넌트, 행렬식, 혼합 판별식, 하이퍼디터미넌트, 다차원 퍼머넌트는
다분 그래프 분해 위의 같은 상향식 순회를 공유한다. 노드 t 마다:

    Q_t      bag 블록의 모든 부분 블록 값
    Q_tc     bag(c) & bag(t) 의 부분집합 위 (-1)^{|D|} Q_t   (포함-배제)
    Q_cc     Delta = bag(c) - bag(t) 만큼 이동한 P_c

부호 없는 signature 는 빠른 subset convolution 한 번으로 결합하고, 부호 있는 축이
하나라도 있으면 각 블록의 잊힌 라벨을 추적하는 부호 오라클과 함께
부호 있는 convolution 을 왼쪽부터 접는다.
"""

from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from app.modules.base_cases.subvalues import FunctionSignature, all_subvalues
from app.modules.engines.engine_run import EngineRun, sweep
from app.modules.graphs.graphs import Vertex, multipartite_graph
from app.modules.shared.errors import ErrorCode, create_engine_error
from app.modules.shared.logger import get_engine_logger
from app.modules.signs.parity import CrossInversionTable
from app.modules.subsetconv.convolution import RingCounter, SubsetTable, signed_convolve, subset_convolve_many
from app.modules.tensor_model.tensor import AxisSubsetSelection, Scalar, SparseTensor, normalize_scalar, subtensor
from app.modules.treedecomp.decomposition import TreeDecomposition, check_width_cap, validate

logger = get_engine_logger()


def bag_ground(bag: FrozenSet[Vertex]) -> Tuple[Vertex, ...]:
    """축 우선, 축 안에서는 인덱스 오름차순"""
    return tuple(sorted(bag))


def bag_block(tensor: SparseTensor, ground: Tuple[Vertex, ...]) -> SparseTensor:
    selection = AxisSubsetSelection(
        tuple(tuple(i for axis, i in ground if axis == l) for l in range(tensor.order))
    )
    return subtensor(tensor, selection)


def _positions(ground: Tuple[Vertex, ...]) -> Dict[Vertex, int]:
    return {label: bit for bit, label in enumerate(ground)}


def _mask(labels, positions: Dict[Vertex, int]) -> int:
    mask = 0
    for label in labels:
        mask |= 1 << positions[label]
    return mask


def _row_count(mask: int, row_bits: int) -> int:
    return (mask & row_bits).bit_count()


class GeneralizedEngine:
    """
    다분 트리 분해 위에서 F(M) 의 상향식 평가

    Args:
        tensor: 정사각 (d+1)차 텐서
        signature: 자유 축별 epsilon
        decomposition: multipartite_graph(tensor) 의 분해
    """

    def __init__(self, tensor: SparseTensor, signature: FunctionSignature, decomposition: TreeDecomposition):
        self.tensor = tensor
        self.signature = signature
        self.td = decomposition
        self.grounds = [bag_ground(bag) for bag in decomposition.bags]
        self.forgotten: Dict[int, Set[Vertex]] = {}
        for node in decomposition.post_order():
            forgotten: Set[Vertex] = set()
            for child in decomposition.children[node]:
                forgotten |= self._child_forgotten(node, child)
            self.forgotten[node] = forgotten

    def _child_forgotten(self, node: int, child: int) -> Set[Vertex]:
        """F_c = beta(T_c) - bag(t) = (bag(c) - bag(t)) + forgotten(c)"""
        return set(self.td.bags[child] - self.td.bags[node]) | self.forgotten[child]

    def node_table(self, node: int, counter: RingCounter) -> SubsetTable:
        """bag 기저 집합 위의 Q_t"""
        ground = self.grounds[node]
        block = bag_block(self.tensor, ground)
        return all_subvalues(block, self.signature, counter).to_subset_table(ground)

    def rekey_child(self, node: int, child: int, child_table: SubsetTable) -> SubsetTable:
        """bag(c) & bag(t) 안의 Y 에 대해 Q_cc(Y) = P_c(Y + Delta), t 의 기저 집합 키"""
        parent_positions = _positions(self.grounds[node])
        child_ground = self.grounds[child]
        delta_mask = 0
        bit_map: List[Optional[int]] = []
        for bit, label in enumerate(child_ground):
            if label in parent_positions:
                bit_map.append(1 << parent_positions[label])
            else:
                bit_map.append(None)
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
        return SubsetTable.from_dict(self.grounds[node], values)

    def shared_table(self, node: int, child: int, node_table: SubsetTable) -> SubsetTable:
        """bag(c) & bag(t) 의 부분집합 위 Q_tc(D, Y) = (-1)^{|D|} Q_t(D, Y)"""
        positions = _positions(self.grounds[node])
        shared = _mask(self.td.bags[node] & self.td.bags[child], positions)
        row_bits = _mask([label for label in self.grounds[node] if label[0] == 0], positions)
        values: Dict[int, Scalar] = {}
        for mask, value in node_table.nonzero():
            if mask & ~shared:
                continue
            values[mask] = -value if _row_count(mask, row_bits) % 2 else value
        return SubsetTable.from_dict(self.grounds[node], values)

    def step(self, node: int, child_tables: Dict[int, SubsetTable], counter: RingCounter) -> SubsetTable:
        q_t = self.node_table(node, counter)
        blocks: List[Tuple[SubsetTable, Set[Vertex]]] = []
        for child in self.td.children[node]:
            blocks.append((self.shared_table(node, child, q_t), set()))
            blocks.append((self.rekey_child(node, child, child_tables[child]), self._child_forgotten(node, child)))

        if not blocks:
            return q_t
        if self.signature.is_all_plus:
            return subset_convolve_many([q_t] + [table for table, _ in blocks], counter)

        ground = self.grounds[node]
        sign_axes = self.signature.row_sign_axes
        acc = q_t
        hidden: Set[Vertex] = set()
        for table, delta in blocks:
            oracle = CrossInversionTable(ground, sign_axes, hidden, delta)
            acc = signed_convolve(acc, table, oracle, counter)
            hidden |= delta
        return acc

    def run(self, threads: Optional[int] = None) -> EngineRun:
        run = EngineRun(self.tensor, self.signature, self.td)
        root_table = sweep(run, self.step, threads)
        full = (1 << len(self.grounds[self.td.root])) - 1
        run.result = normalize_scalar(root_table[full])
        logger.info(
            "Generalized engine finished",
            signature=self.signature.describe(),
            n=self.tensor.lengths[0],
            nodes=run.stats.nodes,
            width_multi_part=run.stats.width_multi_part,
            ring_mults=run.stats.ring_mults,
        )
        return run


def _check_inputs(tensor: SparseTensor, signature: FunctionSignature) -> None:
    if tensor.free_axes != signature.d:
        raise create_engine_error(
            ErrorCode.INCOMPATIBLE_FUNCTION,
            f"signature with {signature.d} free axes applied to an order-{tensor.order} tensor",
        )
    if not tensor.is_square:
        raise create_engine_error(ErrorCode.NOT_SQUARE, f"tensor with lengths {tensor.lengths} is not square")


def run_generalized(
    tensor: SparseTensor,
    signature: FunctionSignature,
    decomposition: TreeDecomposition,
    threads: Optional[int] = None,
    check: bool = True,
) -> EngineRun:
    """검증 후 순회, 전체 EngineRun (결과 + 통계) 반환"""
    _check_inputs(tensor, signature)
    if check:
        validate(decomposition, multipartite_graph(tensor))
    check_width_cap(decomposition)
    return GeneralizedEngine(tensor, signature, decomposition).run(threads)


def generalized_engine(
    tensor: SparseTensor,
    signature: FunctionSignature,
    decomposition: TreeDecomposition,
    threads: Optional[int] = None,
) -> Scalar:
    """
    주어진 signature 의 F(M)

    Args:
        tensor: d + 1 차 정사각 텐서
        signature: 자유 축별 epsilon
        decomposition: multipartite_graph(tensor) 의 분해
        threads: 형제 서브트리 동시 실행 수 (결과는 값과 무관)

    Returns:
        일반화 함수의 정확한 값
    """
    return run_generalized(tensor, signature, decomposition, threads).result
