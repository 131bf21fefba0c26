"""
PACE 2017 `.td` 읽기 / 쓰기

    s td <#bags> <max bag size> <#vertices>
    b <bag-id> <v...>
    <bag-id> <bag-id>
"""

from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple, Union

from app.modules.graphs.graphs import GraphKind, VertexLayout
from app.modules.shared.errors import ErrorCode, create_decomposition_error
from app.modules.treedecomp.decomposition import TreeDecomposition, WidthConvention, normalize


def _syntax(line_no: int, message: str):
    return create_decomposition_error(
        ErrorCode.TD_SYNTAX, f"line {line_no}: {message}", details={"line": line_no}
    )


def read_decomposition(
    text: str,
    layout: VertexLayout,
    kind: GraphKind = GraphKind.GENERIC,
    convention: Optional[WidthConvention] = None,
) -> TreeDecomposition:
    """
    `.td` 파일 파싱

    Args:
        text: 파일 내용
        layout: 분해된 그래프의 전역 정점 번호
        kind: 분해 대상 그래프 종류
        convention: 너비 규약 (기본값은 kind 에서)

    Returns:
        TreeDecomposition: 루트는 가장 큰 bag (동률이면 가장 작은 id),
        포함 관계인 인접 bag 은 축약됨
    """
    header: Optional[Tuple[int, int, int]] = None
    bags: Dict[int, Set[tuple]] = {}
    edges: List[Tuple[int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "s":
            if header is not None or len(tokens) != 5 or tokens[1] != "td":
                raise _syntax(line_no, "expected a single 's td <bags> <max bag> <vertices>' line")
            try:
                header = tuple(int(tok) for tok in tokens[2:])
            except ValueError:
                raise _syntax(line_no, "non-integer solution line") from None
            if header[2] != layout.size:
                raise _syntax(line_no, f"declares {header[2]} vertices, graph has {layout.size}")
            continue
        if header is None:
            raise _syntax(line_no, "content before the 's td' line")

        try:
            numbers = [int(tok) for tok in tokens[1:]] if tokens[0] == "b" else [int(tok) for tok in tokens]
        except ValueError:
            raise _syntax(line_no, f"malformed line '{line}'") from None

        if tokens[0] == "b":
            if not numbers:
                raise _syntax(line_no, "bag line without id")
            bag_id, members = numbers[0], numbers[1:]
            if not 1 <= bag_id <= header[0] or bag_id in bags:
                raise _syntax(line_no, f"invalid or repeated bag id {bag_id}")
            bag = set()
            for vertex_id in members:
                try:
                    bag.add(layout.vertex_of(vertex_id))
                except KeyError:
                    raise create_decomposition_error(
                        ErrorCode.UNKNOWN_VERTEX,
                        f"line {line_no}: unknown vertex id {vertex_id}",
                        details={"line": line_no, "vertex": vertex_id},
                    ) from None
            bags[bag_id] = bag
        else:
            if len(numbers) != 2 or not all(1 <= b <= header[0] for b in numbers):
                raise _syntax(line_no, f"invalid tree edge '{line}'")
            edges.append((numbers[0] - 1, numbers[1] - 1))

    if header is None:
        raise create_decomposition_error(ErrorCode.TD_SYNTAX, "missing 's td' line")
    if len(bags) != header[0]:
        raise create_decomposition_error(
            ErrorCode.TD_SYNTAX, f"declared {header[0]} bags, found {len(bags)}"
        )
    if header[0] == 0:
        return TreeDecomposition([frozenset()], [None], kind, convention)

    ordered = [bags[i] for i in range(1, header[0] + 1)]
    td = TreeDecomposition.from_edges(ordered, edges, root=None, kind=kind, convention=convention)
    # 포함 관계인 인접 bag 을 합쳐 노드 수 <= |V|
    return normalize(td)


def write_decomposition(td: TreeDecomposition, layout: VertexLayout) -> str:
    """정규 `.td` 텍스트: bag 은 노드 id 순, 정점과 간선은 정렬"""
    lines = [f"s td {td.node_count} {td.max_bag_size} {layout.size}"]
    for node, bag in enumerate(td.bags):
        ids = sorted(layout.global_id(v) for v in bag)
        lines.append(" ".join(["b", str(node + 1), *map(str, ids)]))
    for u, v in sorted(tuple(sorted((p + 1, c + 1))) for p, c in td.tree_edges()):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def read_decomposition_file(
    path: Union[str, Path],
    layout: VertexLayout,
    kind: GraphKind = GraphKind.GENERIC,
    convention: Optional[WidthConvention] = None,
) -> TreeDecomposition:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise create_decomposition_error(ErrorCode.TD_SYNTAX, f"cannot read decomposition {path}: {e}") from e
    return read_decomposition(text, layout, kind, convention)


def write_decomposition_file(td: TreeDecomposition, layout: VertexLayout, path: Union[str, Path]) -> None:
    Path(path).write_text(write_decomposition(td, layout), encoding="utf-8")
