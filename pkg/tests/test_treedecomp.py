import networkx as nx
import pytest

from app.modules.generators.instances import band_decompositions, band_matrix, block_example
from app.modules.graphs import (
    COLUMN_PART,
    COORDINATE,
    ROW_PART,
    GraphKind,
    LabeledGraph,
    VertexLayout,
    bipartite_graph,
    column_graph,
    multipartite_graph,
    symmetrized_graph,
)
from app.modules.shared.errors import DecompositionError, ErrorCode, ParameterError, WidthTooLargeError
from app.modules.tensor_model.tensor import SparseTensor
from app.modules.treedecomp import (
    TreeDecomposition,
    WidthConvention,
    assign_rows,
    check_width_cap,
    elimination_order,
    heuristic_decomposition,
    lift_column_to_bipartite,
    lift_symmetrized_to_bipartite,
    normalize,
    read_decomposition,
    restrict,
    single_bag,
    validate,
    write_decomposition,
)


def coordinate_graph(nx_graph):
    n = nx_graph.number_of_nodes()
    layout = VertexLayout([(COORDINATE, n)])
    edges = [((COORDINATE, u), (COORDINATE, v)) for u, v in nx_graph.edges()]
    return LabeledGraph(GraphKind.GENERIC, layout, edges)


def column_path(n):
    """Singleton column bags {x_i} in a path."""
    bags = [{(COLUMN_PART, i)} for i in range(n)]
    return TreeDecomposition(bags, [None] + list(range(n - 1)), GraphKind.COLUMN)


def diagonal(n):
    return SparseTensor((n, n), {(i, i): 1 for i in range(n)})


class TestTreeDecomposition:
    def test_single_root_required(self):
        with pytest.raises(DecompositionError) as exc:
            TreeDecomposition([{(0, 0)}, {(0, 1)}], [None, None])
        assert exc.value.code == ErrorCode.NOT_A_TREE

    def test_cycle_in_parent_links(self):
        with pytest.raises(DecompositionError):
            TreeDecomposition([{(0, 0)}, {(0, 1)}, {(0, 2)}], [None, 2, 1])

    def test_post_order_children_first(self):
        td = TreeDecomposition([set(), set(), set(), set()], [None, 0, 0, 1])
        order = td.post_order()
        assert order[-1] == 0
        assert order.index(3) < order.index(1)
        assert td.heights() == [2, 1, 0, 0]

    def test_from_edges_roots_at_largest_bag(self):
        td = TreeDecomposition.from_edges([{(0, 0)}, {(0, 0), (0, 1)}, {(0, 1)}], [(0, 1), (1, 2)])
        assert td.root == 1
        assert td.children[1] == (0, 2)

    def test_widths(self):
        td = TreeDecomposition([{(0, 0), (1, 0), (1, 1)}], [None], GraphKind.BIPARTITE)
        assert td.width_single_part == 2
        assert td.width_multi_part == 3
        assert td.width == 3
        assert td.with_kind(GraphKind.COLUMN).width == 2


class TestValidate:
    def test_single_bag_is_valid(self, block):
        matrix, _ = block
        graph = bipartite_graph(matrix)
        td = single_bag(graph)
        assert validate(td, graph) == 10
        assert td.width_single_part == 9

    def test_band_path_decompositions(self):
        n, w1, w2 = 8, 1, 2
        matrix = band_matrix(n, w1, w2)
        column_td, symmetric_td, bipartite_td = band_decompositions(n, w1, w2)
        assert validate(column_td, column_graph(matrix)) == w1 + w2
        assert validate(symmetric_td, symmetrized_graph(matrix)) == max(w1, w2)
        assert validate(bipartite_td, bipartite_graph(matrix)) == w1 + w2 + 2

    def test_uncovered_edge(self):
        graph = coordinate_graph(nx.path_graph(3))
        td = TreeDecomposition([{(COORDINATE, 0)}, {(COORDINATE, 1), (COORDINATE, 2)}], [None, 0])
        with pytest.raises(DecompositionError) as exc:
            validate(td, graph)
        assert exc.value.code == ErrorCode.UNCOVERED_EDGE

    def test_uncovered_vertex(self):
        graph = coordinate_graph(nx.empty_graph(2))
        td = TreeDecomposition([{(COORDINATE, 0)}], [None])
        with pytest.raises(DecompositionError) as exc:
            validate(td, graph)
        assert exc.value.code == ErrorCode.UNCOVERED_VERTEX

    def test_unknown_vertex(self):
        graph = coordinate_graph(nx.empty_graph(1))
        td = TreeDecomposition([{(COORDINATE, 0), (COORDINATE, 7)}], [None])
        with pytest.raises(DecompositionError) as exc:
            validate(td, graph)
        assert exc.value.code == ErrorCode.UNKNOWN_VERTEX

    def test_disconnected_occurrence(self):
        graph = coordinate_graph(nx.path_graph(2))
        bags = [{(COORDINATE, 0), (COORDINATE, 1)}, {(COORDINATE, 1)}, {(COORDINATE, 0)}]
        td = TreeDecomposition(bags, [1, None, 1])
        with pytest.raises(DecompositionError) as exc:
            validate(td, graph)
        assert exc.value.code == ErrorCode.DISCONNECTED_OCCURRENCE

    def test_entry_cliques_must_be_covered(self):
        tensor = SparseTensor((1, 1, 1), {(0, 0, 0): 1})
        graph = multipartite_graph(tensor)
        # pairwise-covering bags that never hold the whole entry
        bags = [{(0, 0), (1, 0)}, {(1, 0), (2, 0)}, {(0, 0), (2, 0)}]
        td = TreeDecomposition(bags, [None, 0, 0])
        with pytest.raises(DecompositionError):
            validate(td, graph)

    def test_width_cap(self):
        td = TreeDecomposition([{(COORDINATE, i) for i in range(5)}], [None])
        check_width_cap(td, cap=5)
        with pytest.raises(WidthTooLargeError):
            check_width_cap(td, cap=4)


class TestHeuristics:
    @pytest.mark.parametrize("method", ["min-degree", "min-fill"])
    @pytest.mark.parametrize(
        "nx_graph, width",
        [
            (nx.balanced_tree(2, 3), 1),
            (nx.cycle_graph(7), 2),
            (nx.complete_graph(5), 4),
            (nx.path_graph(6), 1),
        ],
    )
    def test_known_widths(self, method, nx_graph, width):
        graph = coordinate_graph(nx_graph)
        td = heuristic_decomposition(graph, method)
        validate(td, graph)
        assert td.width_single_part == width

    def test_unknown_method(self):
        with pytest.raises(ParameterError):
            elimination_order(coordinate_graph(nx.path_graph(3)), "max-degree")

    def test_disconnected_graph_gives_one_tree(self):
        graph = coordinate_graph(nx.disjoint_union(nx.path_graph(3), nx.cycle_graph(4)))
        td = heuristic_decomposition(graph)
        validate(td, graph)
        assert td.width_single_part == 2

    def test_empty_graph(self):
        graph = LabeledGraph(GraphKind.GENERIC, VertexLayout([(COORDINATE, 0)]))
        td = heuristic_decomposition(graph)
        assert td.node_count == 1

    def test_root_is_a_largest_bag(self):
        graph = coordinate_graph(nx.lollipop_graph(4, 3))
        td = heuristic_decomposition(graph)
        assert len(td.bags[td.root]) == td.max_bag_size

    def test_deterministic(self, grid3):
        graph = bipartite_graph(grid3)
        first = heuristic_decomposition(graph, "min-fill")
        second = heuristic_decomposition(graph, "min-fill")
        assert first == second
        assert first.bags == second.bags


class TestAssignmentAndLifts:
    def test_block_example_assignment(self):
        matrix, td = block_example()
        assignment = assign_rows(td, matrix)
        assert assignment.rows_at(0) == [0, 1]
        assert assignment.rows_at(1) == [2]
        assert assignment.rows_at(2) == [3, 4]

    def test_diagonal_assignment(self):
        td = column_path(4)
        assignment = assign_rows(td, diagonal(4))
        assert all(assignment.rows[a] == a for a in range(4))

    def test_empty_row_goes_to_root(self):
        matrix = SparseTensor((2, 2), {(0, 0): 1})
        td = column_path(2)
        assert assign_rows(td, matrix).rows[1] == td.root

    def test_entry_assignment_for_bipartite_decomposition(self, block):
        matrix, td_x = block
        lifted = lift_column_to_bipartite(td_x, matrix)
        assignment = assign_rows(lifted, matrix)
        assert set(assignment.entries) == set(matrix.entries)
        for (a, x), node in assignment.entries.items():
            assert {(ROW_PART, a), (COLUMN_PART, x)} <= lifted.bags[node]

    def test_lift_block_example(self, block):
        matrix, td_x = block
        lifted = lift_column_to_bipartite(td_x, matrix)
        assert lifted.node_count == 5
        assert validate(lifted, bipartite_graph(matrix)) == 4
        assert lifted.convention == WidthConvention.MULTI_PART

    def test_lift_diagonal(self):
        lifted = lift_column_to_bipartite(column_path(3), diagonal(3))
        assert sorted(map(sorted, lifted.bags)) == [[(0, i), (1, i)] for i in range(3)]
        assert lifted.width == 2

    def test_lift_keeps_nodes_without_rows(self):
        matrix = SparseTensor((2, 2), {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
        bags = [{(COLUMN_PART, 0), (COLUMN_PART, 1)}, {(COLUMN_PART, 1)}]
        td = TreeDecomposition(bags, [None, 0], GraphKind.COLUMN)
        lifted = lift_column_to_bipartite(td, matrix)
        assert frozenset({(COLUMN_PART, 1)}) in lifted.bags
        validate(lifted, bipartite_graph(matrix))

    def test_lift_symmetrized_tridiagonal(self):
        n = 5
        entries = {(i, j): 1 for i in range(n) for j in range(n) if abs(i - j) <= 1}
        matrix = SparseTensor((n, n), entries)
        bags = [{(COORDINATE, i), (COORDINATE, i + 1)} for i in range(n - 1)]
        td_s = TreeDecomposition(bags, [None] + list(range(n - 2)), GraphKind.SYMMETRIZED)
        validate(td_s, symmetrized_graph(matrix))
        lifted = lift_symmetrized_to_bipartite(td_s)
        assert lifted.bags[0] == {(ROW_PART, 0), (ROW_PART, 1), (COLUMN_PART, 0), (COLUMN_PART, 1)}
        validate(lifted, bipartite_graph(matrix))

    def test_lift_single_bag(self):
        td_s = TreeDecomposition([{(COORDINATE, i) for i in range(3)}], [None], GraphKind.SYMMETRIZED)
        lifted = lift_symmetrized_to_bipartite(td_s)
        assert lifted.bags[0] == {(p, i) for p in (ROW_PART, COLUMN_PART) for i in range(3)}


class TestNormalizeAndRestrict:
    def test_normalize_contracts_nested_bags(self):
        bags = [{(COORDINATE, 0), (COORDINATE, 1)}, {(COORDINATE, 1)}, {(COORDINATE, 1), (COORDINATE, 2)}]
        td = TreeDecomposition(bags, [None, 0, 1])
        graph = coordinate_graph(nx.path_graph(3))
        normalized = normalize(td)
        assert normalized.node_count == 2
        validate(normalized, graph)

    def test_restrict_drops_vertices(self, block):
        matrix, td_x = block
        lifted = lift_column_to_bipartite(td_x, matrix)
        keep = {(ROW_PART, 0), (COLUMN_PART, 0)}
        restricted = restrict(lifted, keep)
        assert restricted.vertices() == keep
        assert restricted.node_count == lifted.node_count


class TestTdFormat:
    def test_single_bag_file(self):
        layout = VertexLayout([(COORDINATE, 3)])
        td = read_decomposition("s td 1 3 3\nb 1 1 2 3\n", layout)
        assert td.bags == (frozenset({(COORDINATE, 0), (COORDINATE, 1), (COORDINATE, 2)}),)

    def test_nested_bags_are_contracted(self):
        layout = VertexLayout([(COORDINATE, 3)])
        td = read_decomposition("s td 3 2 3\nb 1 1 2\nb 2 2\nb 3 2 3\n1 2\n2 3\n", layout)
        assert td.node_count == 2
        assert set(td.bags) == {
            frozenset({(COORDINATE, 0), (COORDINATE, 1)}),
            frozenset({(COORDINATE, 1), (COORDINATE, 2)}),
        }
        validate(td, coordinate_graph(nx.path_graph(3)))

    def test_block_example_round_trip(self, block):
        matrix, td_x = block
        layout = column_graph(matrix).layout
        text = write_decomposition(td_x, layout)
        assert text.splitlines()[0] == "s td 3 3 5"
        parsed = read_decomposition(text, layout, GraphKind.COLUMN)
        assert parsed == td_x

    def test_vertex_zero_is_unknown(self):
        layout = VertexLayout([(COORDINATE, 2)])
        with pytest.raises(DecompositionError) as exc:
            read_decomposition("s td 1 2 2\nb 1 0 1\n", layout)
        assert exc.value.code == ErrorCode.UNKNOWN_VERTEX

    @pytest.mark.parametrize(
        "text",
        [
            "b 1 1 2\n",
            "s td 1 2 3\nb 1 1 2\n",
            "s td 2 2 2\nb 1 1 2\n",
            "s td 1 2 2\nb 1 1 2\n1 2\n",
            "s td 1 2 2\nb 1 x\n",
        ],
    )
    def test_syntax_errors(self, text):
        layout = VertexLayout([(COORDINATE, 2)])
        with pytest.raises(DecompositionError) as exc:
            read_decomposition(text, layout)
        assert exc.value.code == ErrorCode.TD_SYNTAX

    def test_non_tree_edges(self):
        layout = VertexLayout([(COORDINATE, 2)])
        with pytest.raises(DecompositionError) as exc:
            read_decomposition("s td 3 1 2\nb 1 1\nb 2 2\nb 3\n1 2\n", layout)
        assert exc.value.code == ErrorCode.NOT_A_TREE
