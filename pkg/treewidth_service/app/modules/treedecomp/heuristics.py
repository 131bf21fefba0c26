"""
휴리스틱 트리 분해: 제거 순서 + 클리크 트리 추출
"""

import heapq
from typing import Dict, List, Set, Tuple

from app.modules.graphs.graphs import LabeledGraph, Vertex
from app.modules.shared.errors import ParameterError
from app.modules.shared.logger import get_decomposition_logger, log_execution_time
from app.modules.treedecomp.decomposition import TreeDecomposition

logger = get_decomposition_logger()

HEURISTICS = ("min-degree", "min-fill")


def count_fillin(adjacency: Dict[Vertex, Set[Vertex]], vertex: Vertex) -> int:
    """이웃을 클리크로 만드는 데 필요한 간선 수"""
    neighbours = list(adjacency[vertex])
    missing = 0
    for i, u in enumerate(neighbours):
        adjacent = adjacency[u]
        for w in neighbours[i + 1:]:
            if w not in adjacent:
                missing += 1
    return missing


def eliminate_node(adjacency: Dict[Vertex, Set[Vertex]], vertex: Vertex) -> Set[Vertex]:
    """이웃을 클리크로 만든 뒤 정점을 제거하고 그 이웃을 반환"""
    neighbours = adjacency.pop(vertex)
    for u in neighbours:
        adjacency[u].discard(vertex)
        adjacency[u].update(w for w in neighbours if w != u)
    return neighbours


def elimination_order(graph: LabeledGraph, method: str = "min-degree") -> Tuple[List[Vertex], Dict[Vertex, Set[Vertex]]]:
    """
    탐욕적 제거 순서

    Args:
        graph: 제거할 그래프
        method: "min-degree" 또는 "min-fill". 동률은 가장 작은 전역 정점 id

    Returns:
        (order, higher): higher[v] 는 제거 시점 v 의 이웃,
        즉 chordal completion 에서 순서상 뒤에 오는 이웃
    """
    if method not in HEURISTICS:
        raise ParameterError(f"unknown heuristic '{method}', expected one of {HEURISTICS}")

    layout = graph.layout
    adjacency: Dict[Vertex, Set[Vertex]] = {v: set(graph.graph[v]) for v in graph.vertices}
    score = (lambda v: len(adjacency[v])) if method == "min-degree" else (lambda v: count_fillin(adjacency, v))

    current: Dict[Vertex, int] = {}
    heap: List[Tuple[int, int, Vertex]] = []
    for v in adjacency:
        current[v] = score(v)
        heap.append((current[v], layout.global_id(v), v))
    heapq.heapify(heap)

    order: List[Vertex] = []
    higher: Dict[Vertex, Set[Vertex]] = {}
    while heap:
        key, _, v = heapq.heappop(heap)
        if v not in adjacency or current[v] != key:
            continue  # 오래된 항목
        neighbours = eliminate_node(adjacency, v)
        order.append(v)
        higher[v] = neighbours

        touched = set(neighbours)
        if method == "min-fill":
            for u in neighbours:
                touched.update(adjacency[u])
        for u in touched:
            updated = score(u)
            if updated != current[u]:
                current[u] = updated
                heapq.heappush(heap, (updated, layout.global_id(u), u))

    return order, higher


@log_execution_time
def heuristic_decomposition(graph: LabeledGraph, method: str = "min-degree") -> TreeDecomposition:
    """
    chordal completion 의 극대 클리크를 bag 으로 하는 분해

    Args:
        graph: 분해할 그래프
        method: "min-degree" 또는 "min-fill"

    Returns:
        TreeDecomposition: 루트는 가장 큰 bag (동률이면 가장 작은 노드 id)
    """
    if graph.number_of_vertices == 0:
        return TreeDecomposition([frozenset()], [None], graph.kind)

    order, higher = elimination_order(graph, method)
    position = {v: i for i, v in enumerate(order)}
    parent_vertex = {
        v: (min(higher[v], key=position.__getitem__) if higher[v] else None) for v in order
    }

    # 극대 clique만 노드로 만든다: v의 bag이 자식 u의 bag에 포함되면 u의 노드에 흡수
    absorbed_child: Dict[Vertex, Vertex] = {}
    for u in order:
        p = parent_vertex[u]
        if p is not None and len(higher[u]) == len(higher[p]) + 1 and p not in absorbed_child:
            absorbed_child[p] = u

    node_of: Dict[Vertex, int] = {}
    node_top: List[Vertex] = []
    bags: List[Set[Vertex]] = []
    for v in order:
        child = absorbed_child.get(v)
        if child is not None:
            node = node_of[child]
            node_of[v] = node
            node_top[node] = v
        else:
            node_of[v] = len(bags)
            bags.append({v} | higher[v])
            node_top.append(v)

    edges: List[Tuple[int, int]] = []
    roots: List[int] = []
    for node, top in enumerate(node_top):
        p = parent_vertex[top]
        if p is None:
            roots.append(node)
        else:
            edges.append((node_of[p], node))
    # 연결 요소가 여러 개면 첫 루트에 연결
    edges.extend((roots[0], other) for other in roots[1:])

    td = TreeDecomposition.from_edges(bags, edges, root=None, kind=graph.kind)
    logger.debug(
        "Heuristic decomposition built",
        method=method,
        nodes=td.node_count,
        max_bag=td.max_bag_size,
        kind=graph.kind.value,
    )
    return td
