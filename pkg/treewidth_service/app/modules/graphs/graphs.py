"""
희소성 그래프 모듈
희소 텐서의 이분 / 대칭화 / 열 / 다분 그래프
"""

from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

import networkx as nx

from app.modules.shared.errors import ErrorCode, create_tensor_error
from app.modules.shared.logger import get_graph_logger
from app.modules.tensor_model.tensor import SparseTensor

logger = get_graph_logger()

Vertex = Tuple[int, int]  # (part, index), index 0-based

ROW_PART = 0
COLUMN_PART = 1
COORDINATE = -1  # 좌표 위의 단일 파트 그래프 (G^s, 조노토프 좌표 그래프)


class GraphKind(str, Enum):
    """LabeledGraph (또는 그 분해) 가 나타내는 희소성 그래프 종류"""
    BIPARTITE = "bipartite"
    MULTIPARTITE = "multipartite"
    COLUMN = "column"
    SYMMETRIZED = "symmetrized"
    EDGE = "edge"
    COORDINATES = "coordinates"
    GENERIC = "generic"


class VertexLayout:
    """전역 1-based 정점 번호를 고정하는 (part, size) 순서 목록"""

    def __init__(self, parts: Sequence[Tuple[int, int]]):
        self.parts: Tuple[Tuple[int, int], ...] = tuple((int(p), int(s)) for p, s in parts)
        self._offsets: Dict[int, int] = {}
        offset = 0
        for part, size in self.parts:
            if part in self._offsets:
                raise ValueError(f"duplicate part {part} in layout")
            self._offsets[part] = offset
            offset += size
        self.size = offset

    def global_id(self, vertex: Vertex) -> int:
        part, index = vertex
        return self._offsets[part] + index + 1

    def vertex_of(self, global_id: int) -> Vertex:
        if not 1 <= global_id <= self.size:
            raise KeyError(global_id)
        remaining = global_id - 1
        for part, size in self.parts:
            if remaining < size:
                return (part, remaining)
            remaining -= size
        raise KeyError(global_id)

    def vertices(self) -> List[Vertex]:
        return [(part, i) for part, size in self.parts for i in range(size)]

    def part_size(self, part: int) -> int:
        return dict(self.parts).get(part, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexLayout) and self.parts == other.parts

    def __repr__(self) -> str:
        return f"VertexLayout({list(self.parts)})"


class LabeledGraph:
    """
    (part, index) 라벨 정점 위의 무방향 그래프

    networkx.Graph 래퍼. 분해 검증이 모든 행과 열을 덮도록 고립 정점도 유지.
    `cliques` 는 다분 그래프의 항목 클리크 (일반 그래프는 비어 있음).
    """

    def __init__(
        self,
        kind: GraphKind,
        layout: VertexLayout,
        edges: Iterable[Tuple[Vertex, Vertex]] = (),
        cliques: Iterable[Iterable[Vertex]] = (),
    ):
        self.kind = kind
        self.layout = layout
        self.graph = nx.Graph()
        self.graph.add_nodes_from(layout.vertices())
        for u, v in edges:
            if u == v:
                continue
            self.graph.add_edge(u, v)
        self.cliques: Tuple[FrozenSet[Vertex], ...] = tuple(frozenset(c) for c in cliques)

    @property
    def vertices(self) -> List[Vertex]:
        return self.layout.vertices()

    @property
    def edges(self) -> Set[FrozenSet[Vertex]]:
        return {frozenset(edge) for edge in self.graph.edges()}

    @property
    def number_of_vertices(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def number_of_edges(self) -> int:
        return self.graph.number_of_edges()

    def neighbors(self, vertex: Vertex) -> Set[Vertex]:
        return set(self.graph[vertex])

    def has_vertex(self, vertex: Vertex) -> bool:
        return vertex in self.graph

    def parts(self) -> Dict[int, List[Vertex]]:
        return {part: [(part, i) for i in range(size)] for part, size in self.layout.parts}

    def is_bipartite_between(self, first: int, second: int) -> bool:
        """모든 간선이 파트 `first` 와 `second` 를 잇는지 여부"""
        return all({u[0], v[0]} == {first, second} for u, v in self.graph.edges())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.kind == other.kind and self.layout == other.layout and self.edges == other.edges

    def __repr__(self) -> str:
        return (
            f"LabeledGraph(kind={self.kind.value}, vertices={self.number_of_vertices}, "
            f"edges={self.number_of_edges})"
        )


def _require_order(tensor: SparseTensor, order: int) -> None:
    if tensor.order != order:
        raise create_tensor_error(
            ErrorCode.WRONG_ORDER, f"expected a tensor of order {order}, got order {tensor.order}"
        )


def bipartite_graph(matrix: SparseTensor) -> LabeledGraph:
    """행 A 와 열 X, 0 아닌 M[a, x] 마다 간선 (a, x)"""
    _require_order(matrix, 2)
    n_rows, n_cols = matrix.lengths
    layout = VertexLayout([(ROW_PART, n_rows), (COLUMN_PART, n_cols)])
    edges = [((ROW_PART, a), (COLUMN_PART, x)) for a, x in matrix.entries]
    return LabeledGraph(GraphKind.BIPARTITE, layout, edges)


def symmetrized_graph(matrix: SparseTensor) -> LabeledGraph:
    """n 개 좌표 정점 위 M + M^T 의 인접 그래프 (대각 무시)"""
    _require_order(matrix, 2)
    if not matrix.is_square:
        raise create_tensor_error(
            ErrorCode.NOT_SQUARE, f"symmetrized graph needs a square matrix, got {matrix.lengths}"
        )
    layout = VertexLayout([(COORDINATE, matrix.n)])
    edges = [((COORDINATE, a), (COORDINATE, x)) for a, x in matrix.entries if a != x]
    return LabeledGraph(GraphKind.SYMMETRIZED, layout, edges)


def column_graph(matrix: SparseTensor) -> LabeledGraph:
    """열 정점만, 각 행의 support X(a) 위에 클리크"""
    _require_order(matrix, 2)
    layout = VertexLayout([(COLUMN_PART, matrix.lengths[1])])
    edges = []
    for row in matrix.rows():
        support = matrix.support(row)
        edges.extend(((COLUMN_PART, x), (COLUMN_PART, y)) for x, y in combinations(support, 2))
    return LabeledGraph(GraphKind.COLUMN, layout, edges)


def multipartite_graph(tensor: SparseTensor) -> LabeledGraph:
    """0 아닌 항목마다 그 좌표 위의 (d+1)-클리크. 차수 2 면 이분 그래프"""
    if tensor.order < 2:
        raise create_tensor_error(ErrorCode.WRONG_ORDER, "tensor order must be at least 2")
    if tensor.order == 2:
        return bipartite_graph(tensor)
    layout = VertexLayout([(axis, n) for axis, n in enumerate(tensor.lengths)])
    cliques = []
    edges = []
    for index in tensor.entries:
        clique = [(axis, i) for axis, i in enumerate(index)]
        cliques.append(clique)
        edges.extend(combinations(clique, 2))
    graph = LabeledGraph(GraphKind.MULTIPARTITE, layout, edges, cliques)
    logger.debug("Built multipartite graph", order=tensor.order, edges=graph.number_of_edges)
    return graph


def graph_for(tensor: SparseTensor, kind: GraphKind) -> LabeledGraph:
    """분해가 대상으로 하는 그래프 종류로 분기"""
    builders = {
        GraphKind.BIPARTITE: multipartite_graph,
        GraphKind.MULTIPARTITE: multipartite_graph,
        GraphKind.COLUMN: column_graph,
        GraphKind.SYMMETRIZED: symmetrized_graph,
    }
    if kind not in builders:
        raise ValueError(f"no tensor graph of kind {kind.value}")
    return builders[kind](tensor)


def export_graph(graph: LabeledGraph) -> str:
    """전역 정점 번호를 쓰는 PACE 2017 `.gr` 텍스트"""
    layout = graph.layout
    edges = sorted(
        tuple(sorted((layout.global_id(u), layout.global_id(v)))) for u, v in graph.graph.edges()
    )
    lines = [f"p tw {layout.size} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
