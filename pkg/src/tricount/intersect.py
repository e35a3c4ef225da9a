"""Counting intersections of sorted adjacency slices.

The ``*_count`` kernels are compiled and work on index ranges of flat
arrays, so the counting loops can hand them ``(neighbors, lo, hi)`` slices
without copying.  The ``intersect_*`` functions wrap them for ordinary
sequences.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from numba import njit

from .errors import ContractViolation

# partition recursion halves the shorter side, so depth <= 64 for int64 lengths
PARTITION_STACK_ROWS = 72


@njit(cache=True, inline="always")
def lower_bound(arr, lo, hi, x):
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def merge_count(a, alo, ahi, b, blo, bhi):
    count = 0
    i = alo
    j = blo
    while i < ahi and j < bhi:
        x = a[i]
        y = b[j]
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            count += 1
            i += 1
            j += 1
    return count


@njit(cache=True)
def binary_count(a, alo, ahi, b, blo, bhi):
    if ahi - alo > bhi - blo:
        a, alo, ahi, b, blo, bhi = b, blo, bhi, a, alo, ahi
    count = 0
    lo = blo
    for i in range(alo, ahi):
        # probes ascend, so the search window only shrinks from the left
        lo = lower_bound(b, lo, bhi, a[i])
        if lo == bhi:
            break
        if b[lo] == a[i]:
            count += 1
            lo += 1
    return count


@njit(cache=True)
def partition_count(a, alo, ahi, b, blo, bhi, stack):
    count = 0
    stack[0, 0] = alo
    stack[0, 1] = ahi
    stack[0, 2] = blo
    stack[0, 3] = bhi
    top = 1
    while top > 0:
        top -= 1
        alo = stack[top, 0]
        ahi = stack[top, 1]
        blo = stack[top, 2]
        bhi = stack[top, 3]
        if alo >= ahi or blo >= bhi:
            continue
        if ahi - alo <= bhi - blo:
            mid = (alo + ahi) >> 1
            pos = lower_bound(b, blo, bhi, a[mid])
            hit = pos < bhi and b[pos] == a[mid]
            if hit:
                count += 1
            stack[top, 0] = mid + 1
            stack[top, 1] = ahi
            stack[top, 2] = pos + 1 if hit else pos
            stack[top, 3] = bhi
            stack[top + 1, 0] = alo
            stack[top + 1, 1] = mid
            stack[top + 1, 2] = blo
            stack[top + 1, 3] = pos
        else:
            mid = (blo + bhi) >> 1
            pos = lower_bound(a, alo, ahi, b[mid])
            hit = pos < ahi and a[pos] == b[mid]
            if hit:
                count += 1
            stack[top, 0] = pos + 1 if hit else pos
            stack[top, 1] = ahi
            stack[top, 2] = mid + 1
            stack[top, 3] = bhi
            stack[top + 1, 0] = alo
            stack[top + 1, 1] = pos
            stack[top + 1, 2] = blo
            stack[top + 1, 3] = mid
        top += 2
    return count


def new_partition_stack() -> np.ndarray:
    return np.empty((PARTITION_STACK_ROWS, 4), dtype=np.int64)


def _as_ids(a: Sequence[int]) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def intersect_merge(a: Sequence[int], b: Sequence[int]) -> int:
    """Two-pointer scan over two strictly increasing sequences."""
    a, b = _as_ids(a), _as_ids(b)
    return int(merge_count(a, 0, len(a), b, 0, len(b)))


def intersect_binary(a: Sequence[int], b: Sequence[int]) -> int:
    """Binary-search each element of the shorter sequence in the longer one."""
    a, b = _as_ids(a), _as_ids(b)
    return int(binary_count(a, 0, len(a), b, 0, len(b)))


def intersect_partition(a: Sequence[int], b: Sequence[int]) -> int:
    """Divide and conquer: split both sequences at the median of the shorter."""
    a, b = _as_ids(a), _as_ids(b)
    return int(partition_count(a, 0, len(a), b, 0, len(b), new_partition_stack()))


def intersect_visit(a: Sequence[int], b: Sequence[int], visit: Callable[[int], None]) -> int:
    """Call ``visit(w)`` for each common element in ascending order; return the count."""
    a, b = _as_ids(a), _as_ids(b)
    common = np.intersect1d(a, b, assume_unique=True)
    for w in common.tolist():
        visit(w)
    return len(common)


class VertexHashSet:
    """Membership flags over ``[0, n)`` that clear in time proportional to use."""

    def __init__(self, n: int):
        self.present = np.zeros(n, dtype=bool)
        self.touched: list[int] = []

    def __len__(self) -> int:
        return len(self.touched)

    def __contains__(self, v: int) -> bool:
        return bool(self.present[v])

    def load(self, a: Sequence[int]) -> None:
        if self.touched:
            raise ContractViolation("load into a VertexHashSet that was not cleared")
        ids = _as_ids(a)
        self.present[ids] = True
        self.touched = ids.tolist()

    def probe_count(self, b: Sequence[int]) -> int:
        ids = _as_ids(b)
        return int(np.count_nonzero(self.present[ids]))

    def probe_visit(self, b: Sequence[int], visit: Callable[[int], None]) -> int:
        hits = 0
        for w in _as_ids(b).tolist():
            if self.present[w]:
                visit(w)
                hits += 1
        return hits

    def clear(self) -> None:
        self.present[self.touched] = False
        self.touched = []


def hash_load(h: VertexHashSet, a: Sequence[int]) -> None:
    h.load(a)


def hash_probe_count(h: VertexHashSet, b: Sequence[int]) -> int:
    return h.probe_count(b)


def hash_clear(h: VertexHashSet) -> None:
    h.clear()
