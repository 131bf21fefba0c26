"""
트리 분해 모듈
다중 파트 bag 의 루트 트리, 검증, 정규화
"""

from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.config.settings import settings
from app.modules.graphs.graphs import GraphKind, LabeledGraph, Vertex
from app.modules.shared.errors import ErrorCode, WidthTooLargeError, create_decomposition_error
from app.modules.shared.logger import get_decomposition_logger

logger = get_decomposition_logger()


class WidthConvention(str, Enum):
    """최대 bag - 1 (single-part) 또는 파트 크기 합의 최대 (multi-part)"""
    SINGLE_PART = "single-part"
    MULTI_PART = "multi-part"


MULTI_PART_KINDS = {GraphKind.BIPARTITE, GraphKind.MULTIPARTITE, GraphKind.EDGE}


def default_convention(kind: GraphKind) -> WidthConvention:
    return WidthConvention.MULTI_PART if kind in MULTI_PART_KINDS else WidthConvention.SINGLE_PART


class TreeDecomposition:
    """
    루트가 있는 트리 분해

    노드는 0..N-1, `parent[root] is None`. 각 bag 은 (part, index) 정점의
    frozenset 이므로 bag 하나에 alpha(t) 와 모든 chi^l(t) 가 들어감.
    생성 후 불변.
    """

    def __init__(
        self,
        bags: Sequence[Iterable[Vertex]],
        parent: Sequence[Optional[int]],
        kind: GraphKind = GraphKind.GENERIC,
        convention: Optional[WidthConvention] = None,
    ):
        self.bags: Tuple[FrozenSet[Vertex], ...] = tuple(frozenset(bag) for bag in bags)
        self.parent: Tuple[Optional[int], ...] = tuple(parent)
        self.kind = kind
        self.convention = convention or default_convention(kind)

        if len(self.bags) != len(self.parent) or not self.bags:
            raise create_decomposition_error(
                ErrorCode.NOT_A_TREE, "decomposition needs at least one node and one parent link per node"
            )
        roots = [t for t, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise create_decomposition_error(ErrorCode.NOT_A_TREE, f"expected exactly one root, found {len(roots)}")
        self.root = roots[0]

        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.bags)))
        for t, p in enumerate(self.parent):
            if p is None:
                continue
            if not 0 <= p < len(self.bags) or p == t:
                raise create_decomposition_error(ErrorCode.NOT_A_TREE, f"node {t} has invalid parent {p}")
            tree.add_edge(t, p)
        if not nx.is_tree(tree):
            raise create_decomposition_error(ErrorCode.NOT_A_TREE, "parent links do not form a tree")

        children: List[List[int]] = [[] for _ in self.bags]
        for t, p in enumerate(self.parent):
            if p is not None:
                children[p].append(t)
        self.children: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(c)) for c in children)

    @classmethod
    def from_edges(
        cls,
        bags: Sequence[Iterable[Vertex]],
        edges: Iterable[Tuple[int, int]],
        root: Optional[int] = None,
        kind: GraphKind = GraphKind.GENERIC,
        convention: Optional[WidthConvention] = None,
    ) -> "TreeDecomposition":
        """무방향 트리에 방향 부여. 루트 기본값은 가장 큰 bag (동률이면 가장 작은 id)"""
        bags = [frozenset(bag) for bag in bags]
        if root is None:
            root = max(range(len(bags)), key=lambda t: (len(bags[t]), -t))
        tree = nx.Graph()
        tree.add_nodes_from(range(len(bags)))
        tree.add_edges_from(edges)
        if not nx.is_tree(tree):
            raise create_decomposition_error(ErrorCode.NOT_A_TREE, "tree edges do not form a tree")
        parent: List[Optional[int]] = [None] * len(bags)
        for u, v in nx.bfs_edges(tree, root, sort_neighbors=sorted):
            parent[v] = u
        return cls(bags, parent, kind, convention)

    # 구조 조회
    @property
    def node_count(self) -> int:
        return len(self.bags)

    def bag(self, node: int) -> FrozenSet[Vertex]:
        return self.bags[node]

    def part(self, node: int, part: int) -> List[int]:
        """bag 안 한 파트의 정렬된 인덱스"""
        return sorted(i for p, i in self.bags[node] if p == part)

    def tree_edges(self) -> List[Tuple[int, int]]:
        return [(p, t) for t, p in enumerate(self.parent) if p is not None]

    def post_order(self) -> List[int]:
        """자식이 부모보다 먼저, 자식은 id 오름차순"""
        order: List[int] = []
        stack = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            stack.append((node, True))
            for child in reversed(self.children[node]):
                stack.append((child, False))
        return order

    def heights(self) -> List[int]:
        """리프 높이 0. 독립 형제 서브트리 배치에 사용"""
        height = [0] * self.node_count
        for node in self.post_order():
            if self.children[node]:
                height[node] = 1 + max(height[c] for c in self.children[node])
        return height

    def vertices(self) -> Set[Vertex]:
        return set().union(*self.bags)

    @property
    def max_bag_size(self) -> int:
        return max(len(bag) for bag in self.bags)

    @property
    def width_single_part(self) -> int:
        return self.max_bag_size - 1

    @property
    def width_multi_part(self) -> int:
        return self.max_bag_size

    @property
    def width(self) -> int:
        if self.convention == WidthConvention.SINGLE_PART:
            return self.width_single_part
        return self.width_multi_part

    def with_kind(self, kind: GraphKind, convention: Optional[WidthConvention] = None) -> "TreeDecomposition":
        return TreeDecomposition(self.bags, self.parent, kind, convention)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        undirected = lambda td: {frozenset(e) for e in td.tree_edges()}  # noqa: E731
        return self.bags == other.bags and undirected(self) == undirected(other)

    def __repr__(self) -> str:
        return (
            f"TreeDecomposition(kind={self.kind.value}, nodes={self.node_count}, "
            f"width={self.width} ({self.convention.value}))"
        )


def validate(td: TreeDecomposition, graph: LabeledGraph) -> int:
    """
    분해의 세 조건을 기계적으로 검사

    Args:
        td: 검사할 분해
        graph: 분해 대상 그래프

    Returns:
        분해에 기록된 규약 기준의 너비

    Raises:
        DecompositionError: 알 수 없는 정점, 빠진 정점, 빠진 간선 / entry clique,
            끊긴 출현 서브트리 (각각 위반 사례 포함)
    """
    occurrences: Dict[Vertex, List[int]] = {}
    for node, bag in enumerate(td.bags):
        for vertex in bag:
            if not graph.has_vertex(vertex):
                raise create_decomposition_error(
                    ErrorCode.UNKNOWN_VERTEX,
                    f"bag {node} references unknown vertex {vertex}",
                    details={"node": node, "vertex": vertex},
                )
            occurrences.setdefault(vertex, []).append(node)

    # (i) 모든 정점 포함
    for vertex in graph.vertices:
        if vertex not in occurrences:
            raise create_decomposition_error(
                ErrorCode.UNCOVERED_VERTEX, f"vertex {vertex} is in no bag", details={"vertex": vertex}
            )

    # (ii) 모든 간선 / entry clique 포함
    def covered(members: Iterable[Vertex]) -> bool:
        members = frozenset(members)
        anchor = min(members)
        return any(members <= td.bags[node] for node in occurrences[anchor])

    for u, v in graph.graph.edges():
        if not covered((u, v)):
            raise create_decomposition_error(
                ErrorCode.UNCOVERED_EDGE, f"edge {u}-{v} lies in no bag", details={"edge": (u, v)}
            )
    for clique in graph.cliques:
        if clique and not covered(clique):
            raise create_decomposition_error(
                ErrorCode.UNCOVERED_EDGE,
                f"entry clique {sorted(clique)} lies in no bag",
                details={"clique": sorted(clique)},
            )

    # (iii) 연결성: 정확히 한 노드만 부모가 집합 밖에 있어야 함
    for vertex, nodes in occurrences.items():
        members = set(nodes)
        tops = [t for t in nodes if td.parent[t] not in members]
        if len(tops) != 1:
            raise create_decomposition_error(
                ErrorCode.DISCONNECTED_OCCURRENCE,
                f"bags containing {vertex} do not form a subtree",
                details={"vertex": vertex, "nodes": sorted(nodes)},
            )

    return td.width


def check_width_cap(td: TreeDecomposition, cap: Optional[int] = None) -> None:
    """2^|bag| 할당 전에 너비 상한 검사"""
    cap = settings.MAX_BAG_SIZE if cap is None else cap
    if td.max_bag_size > cap:
        raise WidthTooLargeError(
            f"largest bag has {td.max_bag_size} vertices, cap is {cap}",
            details={"max_bag": td.max_bag_size, "cap": cap},
        )


def normalize(td: TreeDecomposition) -> TreeDecomposition:
    """포함 관계인 bag 사이의 트리 간선 축약. 결과 노드 수 <= |V|"""
    bags = {t: set(bag) for t, bag in enumerate(td.bags)}
    parent = dict(enumerate(td.parent))
    children = {t: set(c) for t, c in enumerate(td.children)}

    changed = True
    while changed:
        changed = False
        for node in sorted(bags):
            if node not in bags or parent[node] is None:
                continue
            up = parent[node]
            if bags[node] <= bags[up] or bags[up] <= bags[node]:
                if bags[up] <= bags[node]:
                    bags[up] = bags[node]
                for child in children[node]:
                    parent[child] = up
                    children[up].add(child)
                children[up].discard(node)
                del bags[node], parent[node], children[node]
                changed = True

    remap = {old: new for new, old in enumerate(sorted(bags))}
    new_bags = [bags[old] for old in sorted(bags)]
    new_parent = [None if parent[old] is None else remap[parent[old]] for old in sorted(bags)]
    return TreeDecomposition(new_bags, new_parent, td.kind, td.convention)


def restrict(td: TreeDecomposition, keep: Iterable[Vertex], kind: Optional[GraphKind] = None) -> TreeDecomposition:
    """`keep` 밖 정점 제거. `keep` 위 유도 부분그래프의 분해로 유지됨"""
    keep = frozenset(keep)
    return TreeDecomposition(
        [bag & keep for bag in td.bags], td.parent, kind or td.kind, td.convention
    )


def single_bag(graph: LabeledGraph) -> TreeDecomposition:
    """모든 정점을 한 bag 에 담은 자명한 분해"""
    return TreeDecomposition([graph.vertices], [None], graph.kind)
