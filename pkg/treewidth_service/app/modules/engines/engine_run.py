"""
트리 분해 순회의 공통 기록
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from app.config.settings import settings
from app.modules.base_cases.subvalues import FunctionSignature
from app.modules.shared.logger import get_engine_logger
from app.modules.subsetconv.convolution import RingCounter, SubsetTable
from app.modules.tensor_model.tensor import Scalar, SparseTensor
from app.modules.treedecomp.decomposition import TreeDecomposition
from app.modules.treedecomp.lifts import RowAssignment

logger = get_engine_logger()


@dataclass
class EngineStats:
    """순회 통계. 스케일링 검사에서는 실행 시간 대신 ring_mults 사용"""
    nodes: int = 0
    max_bag: int = 0
    width_single_part: int = 0
    width_multi_part: int = 0
    peak_table_cells: int = 0
    ring_mults: int = 0


@dataclass
class EngineRun:
    """평가 한 번의 입력, 살아 있는 노드별 테이블, 결과와 통계"""
    tensor: SparseTensor
    signature: FunctionSignature
    decomposition: TreeDecomposition
    assignment: Optional[RowAssignment] = None
    tables: Dict[int, SubsetTable] = field(default_factory=dict)
    result: Scalar = 0
    stats: EngineStats = field(default_factory=EngineStats)


NodeStep = Callable[[int, Dict[int, SubsetTable], RingCounter], SubsetTable]


def sweep(run: EngineRun, step: NodeStep, threads: Optional[int] = None) -> SubsetTable:
    """
    `step` 을 아래에서 위로 평가하고 루트 테이블 반환

    높이가 같은 노드들의 서브트리는 서로소이므로 높이별 배치를 스레드 풀에서
    실행할 수 있다. 노드는 자식 테이블이 모두 확정된 뒤에만 시작하고,
    소비한 자식 테이블은 버린다. 노드별 카운터는 노드 순서로 합쳐지므로
    결과와 통계는 `threads` 와 무관.
    """
    td = run.decomposition
    threads = settings.THREADS if threads is None else threads
    heights = td.heights()
    batches: Dict[int, List[int]] = {}
    for node in td.post_order():
        batches.setdefault(heights[node], []).append(node)

    live_cells = 0

    def evaluate(node: int):
        counter = RingCounter()
        child_tables = {child: run.tables[child] for child in td.children[node]}
        table = step(node, child_tables, counter)
        logger.debug(
            "Node processed",
            node=node,
            bag=len(td.bags[node]),
            children=len(td.children[node]),
            mults=counter.mults,
        )
        return node, table, counter

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for height in sorted(batches):
            nodes = sorted(batches[height])
            if executor is not None and len(nodes) > 1:
                results = list(executor.map(evaluate, nodes))
            else:
                results = [evaluate(node) for node in nodes]
            for node, table, counter in results:
                run.stats.ring_mults += counter.mults
                run.tables[node] = table
                live_cells += table.size
                run.stats.peak_table_cells = max(run.stats.peak_table_cells, live_cells)
                for child in td.children[node]:
                    live_cells -= run.tables.pop(child).size
    finally:
        if executor is not None:
            executor.shutdown()

    run.stats.nodes = td.node_count
    run.stats.max_bag = td.max_bag_size
    run.stats.width_single_part = td.width_single_part
    run.stats.width_multi_part = td.width_multi_part
    return run.tables.pop(td.root)
