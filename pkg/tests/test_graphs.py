import networkx as nx
import pytest

from app.modules.generators.instances import arrow_matrix
from app.modules.graphs import (
    COLUMN_PART,
    COORDINATE,
    ROW_PART,
    GraphKind,
    VertexLayout,
    bipartite_graph,
    column_graph,
    export_graph,
    graph_for,
    multipartite_graph,
    symmetrized_graph,
)
from app.modules.shared.errors import ErrorCode, TensorFormatError
from app.modules.tensor_model.tensor import SparseTensor


def diagonal(n):
    return SparseTensor((n, n), {(i, i): i + 1 for i in range(n)})


def test_layout_numbering_is_part_by_part():
    layout = VertexLayout([(ROW_PART, 2), (COLUMN_PART, 3)])
    assert layout.size == 5
    assert layout.global_id((ROW_PART, 0)) == 1
    assert layout.global_id((COLUMN_PART, 0)) == 3
    assert layout.vertex_of(5) == (COLUMN_PART, 2)
    with pytest.raises(KeyError):
        layout.vertex_of(0)


def test_bipartite_graph_of_diagonal_is_a_matching():
    graph = bipartite_graph(diagonal(4))
    assert graph.number_of_vertices == 8
    assert graph.number_of_edges == 4
    assert graph.is_bipartite_between(ROW_PART, COLUMN_PART)
    assert nx.is_matching(graph.graph, set(graph.graph.edges()))


def test_bipartite_graph_of_zero_matrix_is_edgeless():
    graph = bipartite_graph(SparseTensor((3, 3), {}))
    assert graph.number_of_vertices == 6
    assert graph.number_of_edges == 0


def test_bipartite_graph_of_block_example(block):
    matrix, _ = block
    graph = bipartite_graph(matrix)
    assert graph.number_of_edges == 15
    assert graph.neighbors((ROW_PART, 2)) == {(COLUMN_PART, 1), (COLUMN_PART, 2), (COLUMN_PART, 3)}


def test_symmetrized_graph_of_diagonal_and_bidiagonal():
    assert symmetrized_graph(diagonal(5)).number_of_edges == 0
    bidiagonal = SparseTensor((5, 5), {**{(i, i): 1 for i in range(5)}, **{(i, i + 1): 2 for i in range(4)}})
    graph = symmetrized_graph(bidiagonal)
    assert graph.edges == {frozenset(((COORDINATE, i), (COORDINATE, i + 1))) for i in range(4)}


def test_symmetrized_graph_needs_square():
    with pytest.raises(TensorFormatError) as exc:
        symmetrized_graph(SparseTensor((2, 3), {}))
    assert exc.value.code == ErrorCode.NOT_SQUARE


def test_symmetrized_grid_contains_the_grid(grid3):
    graph = symmetrized_graph(grid3)
    grid = nx.grid_2d_graph(3, 3)
    # cell (r, c) is coordinate r * 3 + c
    for (r1, c1), (r2, c2) in grid.edges():
        u, v = (COORDINATE, r1 * 3 + c1), (COORDINATE, r2 * 3 + c2)
        assert frozenset((u, v)) in graph.edges


def test_column_graph_of_block_example_is_triangle_chain(block):
    matrix, _ = block
    graph = column_graph(matrix)
    triangles = [(0, 2, 3), (1, 2, 3), (1, 2, 4)]
    expected = {
        frozenset(((COLUMN_PART, x), (COLUMN_PART, y)))
        for t in triangles
        for i, x in enumerate(t)
        for y in t[i + 1:]
    }
    assert graph.edges == expected
    assert graph.kind == GraphKind.COLUMN


def test_column_graph_of_arrow_matrix_is_complete():
    graph = column_graph(arrow_matrix(5))
    assert graph.number_of_edges == 10
    assert column_graph(diagonal(4)).number_of_edges == 0


def test_multipartite_graph_of_diagonal_tensor_is_triangles():
    tensor = SparseTensor((3, 3, 3), {(i, i, i): 1 for i in range(3)})
    graph = multipartite_graph(tensor)
    assert graph.kind == GraphKind.MULTIPARTITE
    assert graph.number_of_edges == 9
    assert nx.number_connected_components(graph.graph) == 3
    assert len(graph.cliques) == 3


def test_multipartite_graph_single_entry():
    tensor = SparseTensor((3, 3, 3), {(0, 1, 2): 4})
    graph = multipartite_graph(tensor)
    assert graph.number_of_edges == 3
    isolated = [v for v in graph.vertices if not graph.neighbors(v)]
    assert len(isolated) == 6


def test_multipartite_graph_of_matrix_is_bipartite_graph(block):
    matrix, _ = block
    assert multipartite_graph(matrix) == bipartite_graph(matrix)


def test_graph_for_dispatch():
    matrix = diagonal(3)
    assert graph_for(matrix, GraphKind.COLUMN).kind == GraphKind.COLUMN
    assert graph_for(matrix, GraphKind.SYMMETRIZED).kind == GraphKind.SYMMETRIZED
    with pytest.raises(ValueError):
        graph_for(matrix, GraphKind.EDGE)


def test_export_graph_uses_global_ids():
    matrix = SparseTensor((2, 2), {(0, 1): 1, (1, 0): 1})
    text = export_graph(bipartite_graph(matrix))
    assert text.splitlines() == ["p tw 4 2", "1 4", "2 3"]
