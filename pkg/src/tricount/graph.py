"""Undirected graphs in compressed sparse row form.

Everything downstream (BFS partitioning, the counting kernels, the bench
harness) consumes :class:`CsrGraph` read-only.  Graphs come from SNAP edge
lists, the binary ``TCSR`` cache, or the RMAT generator, and always pass
through :func:`build_csr` for canonicalization.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, NamedTuple

import numpy as np
from numba import njit

from .errors import CapacityError, InvalidGraphError, ParseError

CSR_MAGIC = b"TCSR"
CSR_VERSION = 1
_HEADER = struct.Struct("<4sIQQ")

# ids are int64; 2**scale vertices plus offsets[n] must stay representable
MAX_RMAT_SCALE = 62


@dataclass(frozen=True)
class EdgeList:
    """Raw vertex pairs, possibly with duplicates, self-loops and both orientations."""

    edges: np.ndarray
    n_hint: int = 0

    def __post_init__(self):
        arr = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if arr.size and arr.min() < 0:
            raise ValueError("vertex ids must be nonnegative")
        if self.n_hint < 0:
            raise ValueError("n_hint must be nonnegative")
        object.__setattr__(self, "edges", arr)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], n_hint: int = 0) -> "EdgeList":
        return cls(np.array(list(pairs), dtype=np.int64).reshape(-1, 2), n_hint)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edges.tolist():
            yield (u, v)

    def pairs(self) -> list[tuple[int, int]]:
        return list(self)


@dataclass(frozen=True, eq=False)
class CsrGraph:
    """Immutable undirected graph with sorted, duplicate-free adjacency slices.

    ``neighbors[offsets[v]:offsets[v + 1]]`` is N(v).  Both orientations of
    every edge are stored, so ``len(neighbors) == 2 * m``.
    """

    n: int
    m: int
    offsets: np.ndarray = field(repr=False)
    neighbors: np.ndarray = field(repr=False)

    def __post_init__(self):
        offsets = np.ascontiguousarray(self.offsets, dtype=np.int64)
        neighbors = np.ascontiguousarray(self.neighbors, dtype=np.int64)
        offsets.flags.writeable = False
        neighbors.flags.writeable = False
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "neighbors", neighbors)

    @classmethod
    def empty(cls, n: int = 0) -> "CsrGraph":
        return cls(n, 0, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, CsrGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
        )

    __hash__ = None

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def adj(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def sources(self) -> np.ndarray:
        """Row id of every slot in ``neighbors``."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())

    def edge_array(self) -> np.ndarray:
        """Each undirected edge once, as rows ``(u, v)`` with ``u < v``."""
        src = self.sources()
        upper = src < self.neighbors
        return np.column_stack((src[upper], self.neighbors[upper]))

    def edge_list(self) -> EdgeList:
        return EdgeList(self.edge_array(), self.n)

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adj(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def validate(self) -> None:
        """Raise InvalidGraphError unless every CSR invariant holds."""
        n, off, nbr = self.n, self.offsets, self.neighbors
        if n < 0 or len(off) != n + 1:
            raise InvalidGraphError(f"offsets must have length n+1={n + 1}, got {len(off)}")
        if off[0] != 0:
            raise InvalidGraphError("offsets[0] must be 0")
        if np.any(np.diff(off) < 0):
            raise InvalidGraphError("offsets must be nondecreasing")
        if off[n] != len(nbr) or len(nbr) != 2 * self.m:
            raise InvalidGraphError(
                f"offsets[n]={off[n]}, len(neighbors)={len(nbr)}, 2m={2 * self.m} must agree"
            )
        if len(nbr) == 0:
            return
        if nbr.min() < 0 or nbr.max() >= n:
            raise InvalidGraphError("neighbor id out of range")
        src = self.sources()
        same_row = src[1:] == src[:-1]
        if np.any(same_row & (nbr[1:] <= nbr[:-1])):
            raise InvalidGraphError("adjacency slices must be strictly increasing")
        if np.any(src == nbr):
            raise InvalidGraphError("self-loop present")
        rev = np.lexsort((src, nbr))
        if not (np.array_equal(nbr[rev], src) and np.array_equal(src[rev], nbr)):
            raise InvalidGraphError("adjacency is not symmetric")


@dataclass(frozen=True, eq=False)
class Permutation:
    """``forward[old] = new`` and ``inverse[new] = old``."""

    forward: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_forward(cls, forward) -> "Permutation":
        forward = np.asarray(forward, dtype=np.int64)
        inverse = np.empty_like(forward)
        inverse[forward] = np.arange(len(forward), dtype=np.int64)
        perm = cls(forward, inverse)
        perm.check()
        return perm

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        ids = np.arange(n, dtype=np.int64)
        return cls(ids, ids.copy())

    def __len__(self) -> int:
        return len(self.forward)

    def inverted(self) -> "Permutation":
        return Permutation(self.inverse, self.forward)

    def check(self) -> None:
        n = len(self.forward)
        ids = np.arange(n)
        if len(self.inverse) != n or not (
            np.array_equal(np.sort(self.forward), ids)
            and np.array_equal(self.forward[self.inverse], ids)
        ):
            raise ValueError("forward and inverse are not mutually inverse bijections")


@dataclass(frozen=True)
class RmatParams:
    scale: int
    edge_factor: int = 16
    a: float = 0.57
    b: float = 0.19
    c: float = 0.19
    d: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.scale < 1 or self.edge_factor < 1:
            raise ValueError("scale and edge_factor must be >= 1")
        if self.scale > MAX_RMAT_SCALE:
            raise CapacityError(f"scale {self.scale} overflows 64-bit vertex ids")
        probs = (self.a, self.b, self.c, self.d)
        if min(probs) < 0 or abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"quadrant probabilities must be >= 0 and sum to 1, got {probs}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


class GraphStats(NamedTuple):
    n: int
    m: int
    d_max: int
    degree_histogram: dict[int, int]


def load_snap_edge_list(stream: IO[str] | Iterable[str]) -> EdgeList:
    """Parse a SNAP-style edge list: ``#`` comments, one ``u v`` pair per line."""
    pairs = []
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected 2 fields, got {len(tokens)}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {text!r}") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, f"negative vertex id in {text!r}")
        pairs.append((u, v))
    return EdgeList.from_pairs(pairs)


def write_snap_edge_list(edges: EdgeList | CsrGraph, stream: IO[str]) -> None:
    if isinstance(edges, CsrGraph):
        stream.write(f"# Nodes: {edges.n} Edges: {edges.m}\n")
        rows = edges.edge_array()
    else:
        stream.write(f"# Pairs: {len(edges)}\n")
        rows = edges.edges
    stream.writelines(f"{u}\t{v}\n" for u, v in rows.tolist())


def build_csr(el: EdgeList) -> CsrGraph:
    e = el.edges
    n = max(el.n_hint, int(e.max()) + 1 if len(e) else 0)
    e = e[e[:, 0] != e[:, 1]]
    src = np.concatenate((e[:, 0], e[:, 1]))
    dst = np.concatenate((e[:, 1], e[:, 0]))
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    keep = np.ones(len(src), dtype=bool)
    keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
    src, dst = src[keep], dst[keep]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return CsrGraph(n, len(dst) // 2, offsets, dst)


def rmat_generate(p: RmatParams) -> EdgeList:
    """Draw ``edge_factor * 2**scale`` pairs by recursive quadrant selection.

    Uses numpy's PCG64 seeded with ``p.seed``; one uniform draw per pair per
    level picks the quadrant (a: top-left, b: top-right, c: bottom-left,
    d: bottom-right).  Vertex labels are not scrambled afterwards.
    """
    count = p.edge_factor << p.scale
    rng = np.random.Generator(np.random.PCG64(p.seed))
    ab, abc = p.a + p.b, p.a + p.b + p.c
    src = np.zeros(count, dtype=np.int64)
    dst = np.zeros(count, dtype=np.int64)
    for level in range(p.scale):
        r = rng.random(count)
        bit = np.int64(1) << np.int64(p.scale - 1 - level)
        down = r >= ab
        right = ((r >= p.a) & (r < ab)) | (r >= abc)
        src[down] |= bit
        dst[right] |= bit
    return EdgeList(np.column_stack((src, dst)), 1 << p.scale)


@njit(cache=True)
def _relabel_kernel(offsets, neighbors, forward, inverse):
    n = len(offsets) - 1
    new_offsets = np.zeros(n + 1, dtype=np.int64)
    for new in range(n):
        old = inverse[new]
        new_offsets[new + 1] = new_offsets[new] + offsets[old + 1] - offsets[old]
    new_neighbors = np.empty(len(neighbors), dtype=np.int64)
    for new in range(n):
        old = inverse[new]
        pos = new_offsets[new]
        for i in range(offsets[old], offsets[old + 1]):
            new_neighbors[pos] = forward[neighbors[i]]
            pos += 1
        new_neighbors[new_offsets[new] : new_offsets[new + 1]].sort()
    return new_offsets, new_neighbors


def relabel(g: CsrGraph, perm: Permutation) -> CsrGraph:
    """The isomorphic graph in which old vertex ``v`` becomes ``perm.forward[v]``."""
    if len(perm) != g.n:
        raise ValueError(f"permutation has length {len(perm)}, graph has n={g.n}")
    offsets, neighbors = _relabel_kernel(g.offsets, g.neighbors, perm.forward, perm.inverse)
    return CsrGraph(g.n, g.m, offsets, neighbors)


def degree_order(g: CsrGraph) -> tuple[CsrGraph, Permutation]:
    """Relabel so degrees are nonincreasing in the new ids; ties keep ascending old id."""
    inverse = np.argsort(-g.degrees(), kind="stable").astype(np.int64)
    forward = np.empty(g.n, dtype=np.int64)
    forward[inverse] = np.arange(g.n, dtype=np.int64)
    perm = Permutation(forward, inverse)
    return relabel(g, perm), perm


def graph_stats(g: CsrGraph) -> GraphStats:
    deg = g.degrees()
    values, counts = np.unique(deg, return_counts=True)
    hist = {int(d): int(c) for d, c in zip(values, counts)}
    return GraphStats(g.n, g.m, int(deg.max()) if g.n else 0, hist)


def write_csr_binary(g: CsrGraph, stream: IO[bytes]) -> None:
    stream.write(_HEADER.pack(CSR_MAGIC, CSR_VERSION, g.n, g.m))
    stream.write(g.offsets.astype("<u8").tobytes())
    stream.write(g.neighbors.astype("<u8").tobytes())


def read_csr_binary(stream: IO[bytes]) -> CsrGraph:
    header = stream.read(_HEADER.size)
    if len(header) != _HEADER.size:
        raise InvalidGraphError("truncated TCSR header")
    magic, version, n, m = _HEADER.unpack(header)
    if magic != CSR_MAGIC:
        raise InvalidGraphError(f"bad magic {magic!r}")
    if version != CSR_VERSION:
        raise InvalidGraphError(f"unsupported TCSR version {version}")
    body = stream.read()
    want = 8 * (n + 1 + 2 * m)
    if len(body) != want:
        raise InvalidGraphError(f"expected {want} payload bytes, got {len(body)}")
    raw = np.frombuffer(body, dtype="<u8")
    g = CsrGraph(n, m, raw[: n + 1].astype(np.int64), raw[n + 1 :].astype(np.int64))
    g.validate()
    return g


def sniff_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".bin":
        return "bin"
    if suffix in (".txt", ".el", ".tsv", ".edges", ""):
        return "txt"
    raise ValueError(f"cannot infer graph format from {str(path)!r}; pass an explicit format")


def load_graph(path: str | Path, fmt: str | None = None) -> CsrGraph:
    """Read a SNAP text edge list (``txt``) or a TCSR cache (``bin``)."""
    fmt = fmt or sniff_format(path)
    if fmt == "bin":
        with open(path, "rb") as f:
            return read_csr_binary(f)
    if fmt == "txt":
        with open(path, encoding="utf-8") as f:
            return build_csr(load_snap_edge_list(f))
    raise ValueError(f"unknown graph format {fmt!r}")


def save_graph(g: CsrGraph, path: str | Path, fmt: str | None = None) -> None:
    fmt = fmt or sniff_format(path)
    if fmt == "bin":
        with open(path, "wb") as f:
            write_csr_binary(g, f)
    elif fmt == "txt":
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            write_snap_edge_list(g, f)
    else:
        raise ValueError(f"unknown graph format {fmt!r}")


def karate_path() -> Path:
    return Path(__file__).parent / "data" / "karate.txt"


def grid_generate(
    rows: int, cols: int, keep: float = 1.0, diagonal: float = 0.0, seed: int = 0
) -> EdgeList:
    """A lattice road-map stand-in: each lattice edge survives with probability
    ``keep`` and each cell gains one random diagonal with probability ``diagonal``."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    parts = [
        np.column_stack((ids[:, :-1].ravel(), ids[:, 1:].ravel())),
        np.column_stack((ids[:-1, :].ravel(), ids[1:, :].ravel())),
    ]
    lattice = np.concatenate(parts)
    lattice = lattice[rng.random(len(lattice)) < keep]
    corners = np.column_stack(
        (ids[:-1, :-1].ravel(), ids[1:, 1:].ravel(), ids[:-1, 1:].ravel(), ids[1:, :-1].ravel())
    )
    corners = corners[rng.random(len(corners)) < diagonal]
    anti = rng.random(len(corners)) < 0.5
    diag = np.where(anti[:, None], corners[:, 2:], corners[:, :2])
    return EdgeList(np.concatenate((lattice, diag)), rows * cols)
