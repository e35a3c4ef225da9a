"""Sequential exact triangle counting over CSR graphs."""

from .algorithms import REGISTRY, count_triangles, get_algorithm
from .bfs import EdgePartition, LevelAssignment, bfs_forest, classify_edges, horizontal_fraction
from .graph import (
    CsrGraph,
    EdgeList,
    Permutation,
    RmatParams,
    build_csr,
    degree_order,
    graph_stats,
    load_snap_edge_list,
    rmat_generate,
)

__all__ = [
    "REGISTRY",
    "CsrGraph",
    "EdgeList",
    "EdgePartition",
    "LevelAssignment",
    "Permutation",
    "RmatParams",
    "bfs_forest",
    "build_csr",
    "classify_edges",
    "count_triangles",
    "degree_order",
    "get_algorithm",
    "graph_stats",
    "horizontal_fraction",
    "load_snap_edge_list",
    "rmat_generate",
]
