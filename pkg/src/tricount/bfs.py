"""BFS levels over a whole graph and the horizontal / level-spanning edge split."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ContractViolation
from .graph import CsrGraph


@dataclass(frozen=True, eq=False)
class LevelAssignment:
    level: np.ndarray
    roots: np.ndarray


@dataclass(frozen=True, eq=False)
class EdgePartition:
    """``g0`` holds the horizontal edges, ``g1`` the edges spanning two levels."""

    g0: CsrGraph
    g1: CsrGraph


@njit(cache=True)
def bfs_levels(offsets, neighbors, root_order):
    """FIFO BFS from each still-unvisited vertex of ``root_order``.

    Returns ``(level, roots)``.  Neighbors are expanded in adjacency order,
    so the levels are fully determined by the graph and the root order.
    """
    n = len(offsets) - 1
    level = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    roots = np.empty(n, dtype=np.int64)
    n_roots = 0
    for r in root_order:
        if level[r] >= 0:
            continue
        roots[n_roots] = r
        n_roots += 1
        level[r] = 0
        head = 0
        tail = 1
        queue[0] = r
        while head < tail:
            u = queue[head]
            head += 1
            nxt = level[u] + 1
            for i in range(offsets[u], offsets[u + 1]):
                w = neighbors[i]
                if level[w] < 0:
                    level[w] = nxt
                    queue[tail] = w
                    tail += 1
    return level, roots[:n_roots]


def bfs_forest(g: CsrGraph, root_order=None) -> LevelAssignment:
    """Levels for every vertex; ``root_order=None`` means ascending vertex id."""
    if root_order is None:
        root_order = np.arange(g.n, dtype=np.int64)
    else:
        root_order = np.asarray(root_order, dtype=np.int64)
        if len(root_order) != g.n or not np.array_equal(np.sort(root_order), np.arange(g.n)):
            raise ContractViolation("root_order must be a permutation of the vertex ids")
    level, roots = bfs_levels(g.offsets, g.neighbors, root_order)
    return LevelAssignment(level, roots)


@njit(cache=True)
def split_by_level(offsets, neighbors, level):
    """CSR arrays of the horizontal and spanning subgraphs, same vertex set."""
    n = len(offsets) - 1
    off0 = np.zeros(n + 1, dtype=np.int64)
    off1 = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        h = 0
        for i in range(offsets[u], offsets[u + 1]):
            if level[neighbors[i]] == level[u]:
                h += 1
        off0[u + 1] = off0[u] + h
        off1[u + 1] = off1[u] + (offsets[u + 1] - offsets[u] - h)
    nbr0 = np.empty(off0[n], dtype=np.int64)
    nbr1 = np.empty(off1[n], dtype=np.int64)
    for u in range(n):
        p0 = off0[u]
        p1 = off1[u]
        for i in range(offsets[u], offsets[u + 1]):
            w = neighbors[i]
            if level[w] == level[u]:
                nbr0[p0] = w
                p0 += 1
            else:
                nbr1[p1] = w
                p1 += 1
    return off0, nbr0, off1, nbr1


def classify_edges(g: CsrGraph, levels: LevelAssignment | np.ndarray) -> EdgePartition:
    level = levels.level if isinstance(levels, LevelAssignment) else np.asarray(levels)
    if len(level) != g.n:
        raise ContractViolation(f"level array has length {len(level)}, graph has n={g.n}")
    off0, nbr0, off1, nbr1 = split_by_level(g.offsets, g.neighbors, level.astype(np.int64))
    return EdgePartition(
        CsrGraph(g.n, len(nbr0) // 2, off0, nbr0),
        CsrGraph(g.n, len(nbr1) // 2, off1, nbr1),
    )


def horizontal_fraction(p: EdgePartition) -> float:
    """Percentage of edges that are horizontal; 0.0 for an edgeless graph."""
    m = p.g0.m + p.g1.m
    if m == 0:
        return 0.0
    return 100.0 * p.g0.m / m
