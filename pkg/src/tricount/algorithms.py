"""Exact triangle counting, one function per benchmarked variant.

Every ``tc_*`` function takes a read-only :class:`CsrGraph` and returns the
number of triangles as a Python int.  Scratch space is allocated inside the
call.  The compiled loops operate directly on ``offsets`` / ``neighbors``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numba import njit

from .bfs import bfs_levels, split_by_level
from .errors import UnknownAlgorithmError
from .graph import CsrGraph, degree_order
from .intersect import (
    binary_count,
    lower_bound,
    merge_count,
    new_partition_stack,
    partition_count,
)

MERGE, BINARY, PARTITION, HASH = "merge", "binary", "partition", "hash"
_KERNEL_CODES = {MERGE: 0, BINARY: 1, PARTITION: 2}


@njit(cache=True, inline="always")
def _adjacent(offsets, neighbors, u, v):
    hi = offsets[u + 1]
    i = lower_bound(neighbors, offsets[u], hi, v)
    return i < hi and neighbors[i] == v


@njit(cache=True)
def _brute_force(offsets, neighbors):
    n = len(offsets) - 1
    count = 0
    for u in range(n):
        for v in range(u + 1, n):
            if not _adjacent(offsets, neighbors, u, v):
                continue
            for w in range(v + 1, n):
                if _adjacent(offsets, neighbors, u, w) and _adjacent(offsets, neighbors, v, w):
                    count += 1
    return count


@njit(cache=True)
def _treelist(offsets, neighbors):
    n = len(offsets) - 1
    off = offsets.copy()
    nbr = neighbors.copy()
    parent = np.empty(n, dtype=np.int64)
    seen = np.empty(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    count = 0
    while len(nbr) > 0:
        parent[:] = -1
        seen[:] = False
        for r in range(n):
            if seen[r] or off[r] == off[r + 1]:
                continue
            seen[r] = True
            queue[0] = r
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                for i in range(off[u], off[u + 1]):
                    w = nbr[i]
                    if not seen[w]:
                        seen[w] = True
                        parent[w] = u
                        queue[tail] = w
                        tail += 1
        # A triangle with a tree edge is seen from a non-tree edge whose
        # endpoint's parent closes it; siblings would see it twice.
        for u in range(n):
            pu = parent[u]
            for i in range(off[u], off[u + 1]):
                v = nbr[i]
                if v <= u or parent[v] == u or pu == v:
                    continue
                pv = parent[v]
                if pu >= 0 and _adjacent(off, nbr, pu, v):
                    count += 1
                if pv >= 0 and pv != pu and _adjacent(off, nbr, pv, u):
                    count += 1
        new_off = np.zeros(n + 1, dtype=np.int64)
        kept = 0
        for u in range(n):
            for i in range(off[u], off[u + 1]):
                w = nbr[i]
                if parent[w] != u and parent[u] != w:
                    nbr[kept] = w
                    kept += 1
            new_off[u + 1] = kept
        off = new_off
        nbr = nbr[:kept].copy()
    return count


@njit(cache=True)
def _vertex_iterator(offsets, neighbors):
    n = len(offsets) - 1
    count = 0
    for v in range(n):
        lo = offsets[v]
        hi = offsets[v + 1]
        for i in range(lo, hi):
            u = neighbors[i]
            for j in range(lo, hi):
                if j != i and _adjacent(offsets, neighbors, u, neighbors[j]):
                    count += 1
    return count // 6


@njit(cache=True)
def _vertex_iterator_directed(offsets, neighbors):
    n = len(offsets) - 1
    count = 0
    for v in range(n):
        lo = offsets[v]
        hi = offsets[v + 1]
        mid = lower_bound(neighbors, lo, hi, v)
        for i in range(lo, mid):
            u = neighbors[i]
            for j in range(mid, hi):
                if _adjacent(offsets, neighbors, u, neighbors[j]):
                    count += 1
    return count


@njit(cache=True)
def _edge_iterator(offsets, neighbors, kernel, directed):
    n = len(offsets) - 1
    stack = np.empty((72, 4), dtype=np.int64)
    count = 0
    for u in range(n):
        ulo = offsets[u]
        uhi = offsets[u + 1]
        start = lower_bound(neighbors, ulo, uhi, u) if directed else ulo
        for i in range(start, uhi):
            v = neighbors[i]
            vlo = offsets[v]
            vhi = offsets[v + 1]
            if kernel == 0:
                count += merge_count(neighbors, ulo, uhi, neighbors, vlo, vhi)
            elif kernel == 1:
                count += binary_count(neighbors, ulo, uhi, neighbors, vlo, vhi)
            else:
                count += partition_count(neighbors, ulo, uhi, neighbors, vlo, vhi, stack)
    return count // 3 if directed else count // 6


@njit(cache=True)
def _edge_iterator_hash(offsets, neighbors, directed):
    n = len(offsets) - 1
    mark = np.zeros(n, dtype=np.bool_)
    count = 0
    for u in range(n):
        ulo = offsets[u]
        uhi = offsets[u + 1]
        start = lower_bound(neighbors, ulo, uhi, u) if directed else ulo
        if start == uhi:
            continue
        for i in range(ulo, uhi):
            mark[neighbors[i]] = True
        for i in range(start, uhi):
            v = neighbors[i]
            for j in range(offsets[v], offsets[v + 1]):
                if mark[neighbors[j]]:
                    count += 1
        for i in range(ulo, uhi):
            mark[neighbors[i]] = False
    return count // 3 if directed else count // 6


@njit(cache=True)
def _forward_sets(offsets, neighbors):
    # A(v) only ever receives neighbors u < v, so that many slots suffice
    n = len(offsets) - 1
    start = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        lower = lower_bound(neighbors, offsets[v], offsets[v + 1], v) - offsets[v]
        start[v + 1] = start[v] + lower
    return start, np.zeros(n, dtype=np.int64), np.empty(start[n], dtype=np.int64)


@njit(cache=True)
def _forward(offsets, neighbors):
    n = len(offsets) - 1
    start, size, arena = _forward_sets(offsets, neighbors)
    count = 0
    for u in range(n):
        hi = offsets[u + 1]
        for i in range(lower_bound(neighbors, offsets[u], hi, u + 1), hi):
            v = neighbors[i]
            count += merge_count(
                arena, start[u], start[u] + size[u], arena, start[v], start[v] + size[v]
            )
            arena[start[v] + size[v]] = u
            size[v] += 1
    return count


@njit(cache=True)
def _forward_hashed(offsets, neighbors):
    """Returns ``(triangles, hash lookups)``."""
    n = len(offsets) - 1
    start, size, arena = _forward_sets(offsets, neighbors)
    mark = np.zeros(n, dtype=np.bool_)
    count = 0
    probes = 0
    for u in range(n):
        hi = offsets[u + 1]
        for i in range(lower_bound(neighbors, offsets[u], hi, u + 1), hi):
            v = neighbors[i]
            for k in range(start[u], start[u] + size[u]):
                mark[arena[k]] = True
            for k in range(start[v], start[v] + size[v]):
                if mark[arena[k]]:
                    count += 1
            probes += size[v]
            for k in range(start[u], start[u] + size[u]):
                mark[arena[k]] = False
            arena[start[v] + size[v]] = u
            size[v] += 1
    return count, probes


@njit(cache=True)
def _tri_simple(offsets, neighbors):
    n = len(offsets) - 1
    count = 0
    for u in range(n):
        ulo = offsets[u]
        lower_end = lower_bound(neighbors, ulo, offsets[u + 1], u)
        for i in range(ulo, lower_end):
            v = neighbors[i]
            vlo = offsets[v]
            # common lower neighbors of u and v are below v, i.e. in N(u)[ulo:i]
            count += merge_count(
                neighbors, ulo, i, neighbors, vlo, lower_bound(neighbors, vlo, offsets[v + 1], v)
            )
    return count


@njit(cache=True)
def _linear_algebra(offsets, neighbors):
    # row i: count edges of the graph induced on i's lower neighbors
    n = len(offsets) - 1
    mark = np.zeros(n, dtype=np.bool_)
    count = 0
    for i in range(n):
        lo = offsets[i]
        end = lower_bound(neighbors, lo, offsets[i + 1], i)
        for p in range(lo, end):
            mark[neighbors[p]] = True
        for p in range(lo, end):
            j = neighbors[p]
            jlo = offsets[j]
            for q in range(jlo, lower_bound(neighbors, jlo, offsets[j + 1], j)):
                if mark[neighbors[q]]:
                    count += 1
        for p in range(lo, end):
            mark[neighbors[p]] = False
    return count


@njit(cache=True)
def _cover_edge(offsets, neighbors):
    n = len(offsets) - 1
    level, _ = bfs_levels(offsets, neighbors, np.arange(n))
    mark = np.zeros(n, dtype=np.bool_)
    count = 0
    for u in range(n):
        ulo = offsets[u]
        uhi = offsets[u + 1]
        lu = level[u]
        loaded = False
        for i in range(lower_bound(neighbors, ulo, uhi, u + 1), uhi):
            v = neighbors[i]
            if level[v] != lu:
                continue
            if not loaded:
                for k in range(ulo, uhi):
                    mark[neighbors[k]] = True
                loaded = True
            for k in range(offsets[v], offsets[v + 1]):
                w = neighbors[k]
                if mark[w] and (level[w] != lu or v < w):
                    count += 1
        if loaded:
            for k in range(ulo, uhi):
                mark[neighbors[k]] = False
    return count


@njit(cache=True)
def _fast(offsets, neighbors):
    """Returns ``(triangles, hash lookups)`` over both phases."""
    n = len(offsets) - 1
    level, _ = bfs_levels(offsets, neighbors, np.arange(n))
    off0, nbr0, off1, nbr1 = split_by_level(offsets, neighbors, level)
    count, probes = _forward_hashed(off0, nbr0)
    mark = np.zeros(n, dtype=np.bool_)
    for u in range(n):
        for k in range(off1[u], off1[u + 1]):
            mark[nbr1[k]] = True
        for i in range(off0[u], off0[u + 1]):
            v = nbr0[i]
            if u < v:
                for k in range(off1[v], off1[v + 1]):
                    if mark[nbr1[k]]:
                        count += 1
                probes += off1[v + 1] - off1[v]
        for k in range(off1[u], off1[u + 1]):
            mark[nbr1[k]] = False
    return count, probes


def _maybe_reorder(g: CsrGraph, reorder: bool) -> CsrGraph:
    return degree_order(g)[0] if reorder else g


def tc_brute_force(g: CsrGraph) -> int:
    """Check every vertex triple; a test oracle for small graphs."""
    return int(_brute_force(g.offsets, g.neighbors))


def tc_treelist(g: CsrGraph) -> int:
    """Itai-Rodeh tree listing: BFS forest, close non-tree edges, drop tree edges, repeat."""
    return int(_treelist(g.offsets, g.neighbors))


def tc_vertex_iterator(g: CsrGraph, directed: bool = False) -> int:
    if directed:
        return int(_vertex_iterator_directed(g.offsets, g.neighbors))
    return int(_vertex_iterator(g.offsets, g.neighbors))


def tc_edge_iterator(g: CsrGraph, kernel: str = MERGE, directed: bool = False) -> int:
    if kernel == HASH:
        return int(_edge_iterator_hash(g.offsets, g.neighbors, directed))
    try:
        code = _KERNEL_CODES[kernel]
    except KeyError:
        raise ValueError(f"unknown intersection kernel {kernel!r}") from None
    return int(_edge_iterator(g.offsets, g.neighbors, code, directed))


def tc_forward(g: CsrGraph) -> int:
    return int(_forward(g.offsets, g.neighbors))


def tc_forward_hashed(g: CsrGraph, reorder: bool = False) -> int:
    g = _maybe_reorder(g, reorder)
    return int(_forward_hashed(g.offsets, g.neighbors)[0])


def tc_tri_simple(g: CsrGraph) -> int:
    return int(_tri_simple(g.offsets, g.neighbors))


def tc_linear_algebra(g: CsrGraph) -> int:
    return int(_linear_algebra(g.offsets, g.neighbors))


def tc_cover_edge(g: CsrGraph, reorder: bool = False) -> int:
    g = _maybe_reorder(g, reorder)
    return int(_cover_edge(g.offsets, g.neighbors))


def tc_fast(g: CsrGraph, reorder: bool = False) -> int:
    """Forward-hashed on the horizontal edges plus hashed probes of the spanning edges."""
    g = _maybe_reorder(g, reorder)
    return int(_fast(g.offsets, g.neighbors)[0])


def tc_fast_with_probes(g: CsrGraph, reorder: bool = False) -> tuple[int, int]:
    """Like :func:`tc_fast`, also returning the number of hash lookups made."""
    g = _maybe_reorder(g, reorder)
    count, probes = _fast(g.offsets, g.neighbors)
    return int(count), int(probes)


@dataclass(frozen=True)
class Algorithm:
    key: str
    label: str
    func: Callable[[CsrGraph], int]

    def __call__(self, g: CsrGraph) -> int:
        return self.func(g)


def _entries():
    def ei(kernel, directed):
        return lambda g: tc_edge_iterator(g, kernel, directed)

    yield "IR", "Treelist (Itai-Rodeh)", tc_treelist
    yield "V", "Vertex iterator", lambda g: tc_vertex_iterator(g, False)
    yield "VD", "Vertex iterator (direction-oriented)", lambda g: tc_vertex_iterator(g, True)
    for key, kernel, name in (
        ("EM", MERGE, "MergePath"),
        ("EB", BINARY, "BinarySearch"),
        ("EP", PARTITION, "Partitioning"),
        ("EH", HASH, "Hashing"),
    ):
        yield key, f"Edge iterator, {name}", ei(kernel, False)
        yield key + "D", f"Edge iterator, {name} (direction-oriented)", ei(kernel, True)
    yield "F", "Forward", tc_forward
    yield "FH", "Forward with hashing", lambda g: tc_forward_hashed(g, False)
    yield "FHD", "Forward with hashing, degree-ordered", lambda g: tc_forward_hashed(g, True)
    yield "TS", "tri_simple", tc_tri_simple
    yield "LA", "Linear algebra", tc_linear_algebra
    yield "CE", "Cover edge", lambda g: tc_cover_edge(g, False)
    yield "CED", "Cover edge, degree-ordered", lambda g: tc_cover_edge(g, True)
    yield "Bader", "Fast triangle counting", lambda g: tc_fast(g, False)
    yield "BaderD", "Fast triangle counting, degree-ordered", lambda g: tc_fast(g, True)


# key order follows the benchmark table columns
REGISTRY: dict[str, Algorithm] = {key: Algorithm(key, label, f) for key, label, f in _entries()}


def get_algorithm(key: str, registry: dict[str, Algorithm] | None = None) -> Algorithm:
    registry = REGISTRY if registry is None else registry
    try:
        return registry[key]
    except KeyError:
        raise UnknownAlgorithmError(
            f"unknown algorithm {key!r}; choose from {', '.join(registry)}"
        ) from None


def count_triangles(g: CsrGraph, key: str = "Bader") -> int:
    return get_algorithm(key)(g)


def warm_up() -> None:
    """Trigger compilation of every kernel on a tiny graph so timings exclude the JIT."""
    from .graph import EdgeList, build_csr

    tiny = build_csr(EdgeList.from_pairs([(0, 1), (1, 2), (0, 2), (2, 3)]))
    tc_brute_force(tiny)
    tc_fast_with_probes(tiny)
    for algo in REGISTRY.values():
        algo(tiny)
