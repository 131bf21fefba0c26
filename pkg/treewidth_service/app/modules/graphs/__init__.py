from .graphs import (
    COLUMN_PART,
    COORDINATE,
    ROW_PART,
    GraphKind,
    LabeledGraph,
    Vertex,
    VertexLayout,
    bipartite_graph,
    column_graph,
    export_graph,
    graph_for,
    multipartite_graph,
    symmetrized_graph,
)

__all__ = [
    "COLUMN_PART",
    "COORDINATE",
    "ROW_PART",
    "GraphKind",
    "LabeledGraph",
    "Vertex",
    "VertexLayout",
    "bipartite_graph",
    "column_graph",
    "export_graph",
    "graph_for",
    "multipartite_graph",
    "symmetrized_graph",
]
