"""r-line-graphs: vertex sets of r-tuples, their blocks, density and degree.

A vertex is a tuple ``(a_0, ..., a_{r-1})`` where ``a_i`` indexes an element
of the part ``A_i`` (axes are 0-based). Two vertices are adjacent iff they
differ in exactly one coordinate; the ``i``-blocks are the classes of
vertices agreeing off axis ``i``.

Vertex ids are positions in the lexicographically sorted vertex list, so
every graph has one canonical numbering.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .hypergraph import Hypergraph, offsets

Vertex = tuple[int, ...]


class Coordinate(NamedTuple):
    """Element ``element`` of part ``A_part`` (``part`` is a 0-based axis)."""

    part: int
    element: int


@dataclass(frozen=True)
class DensityStats:
    num_vertices: int
    num_blocks: int
    density: Fraction
    min_degree: int


def _group_rows(sub: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Group equal rows. Returns (group id per row, members grouped, group sizes).

    Groups are numbered in lexicographic order of their rows; members of a
    group are in ascending row order.
    """
    n = sub.shape[0]
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    if sub.shape[1] == 0:
        return np.zeros(n, dtype=np.int64), np.arange(n, dtype=np.int64), np.array([n], dtype=np.int64)
    order = np.lexsort(sub.T[::-1]).astype(np.int64)
    s = sub[order]
    change = np.any(s[1:] != s[:-1], axis=1)
    gid_sorted = np.concatenate(([0], np.cumsum(change))).astype(np.int64)
    gid = np.empty(n, dtype=np.int64)
    gid[order] = gid_sorted
    return gid, order, np.bincount(gid_sorted).astype(np.int64)


class LineGraph:
    """Immutable r-line-graph with a per-axis block index."""

    def __init__(self, r: int, part_sizes: Sequence[int], vertices: Iterable[Sequence[int]],
                 names: Sequence[Sequence[int]] | None = None):
        part_sizes = tuple(int(s) for s in part_sizes)
        if r < 2 or len(part_sizes) != r:
            raise ValueError("need r >= 2 and one size per part")
        arr = np.asarray([tuple(v) for v in vertices], dtype=np.int64).reshape(-1, r)
        if arr.size and ((arr < 0).any() or (arr >= np.array(part_sizes)).any()):
            raise ValueError("coordinate outside its part")
        if arr.shape[0]:
            arr = np.unique(arr, axis=0)
        if names is None:
            names = tuple(tuple(range(o, o + s)) for o, s in zip(offsets(part_sizes), part_sizes))
        else:
            names = tuple(tuple(int(x) for x in part) for part in names)
            if [len(p) for p in names] != list(part_sizes):
                raise ValueError("names must list one id per element of each part")
        self._setup(r, part_sizes, arr, names)

    @classmethod
    def _from_sorted(cls, r, part_sizes, arr, names) -> LineGraph:
        G = cls.__new__(cls)
        G._setup(r, part_sizes, arr, names)
        return G

    def _setup(self, r, part_sizes, arr, names):
        self.r = r
        self.part_sizes = part_sizes
        self.names = names
        self.coords = np.ascontiguousarray(arr, dtype=np.int64)
        self.coords.setflags(write=False)
        self.n = n = arr.shape[0]
        self.offsets = np.asarray(offsets(part_sizes), dtype=np.int64)
        self.gcoords = self.coords + self.offsets
        block_of = np.empty((r, n), dtype=np.int64)
        members = np.empty(r * n, dtype=np.int64)
        sizes = []
        axis_of = []
        base = 0
        for a in range(r):
            sub = np.delete(self.coords, a, axis=1)
            gid, order, counts = _group_rows(sub)
            block_of[a] = gid + base
            members[a * n:(a + 1) * n] = order
            sizes.append(counts)
            axis_of.append(np.full(len(counts), a, dtype=np.int64))
            base += len(counts)
        self.block_of = block_of
        self.block_size = np.concatenate(sizes) if sizes else np.zeros(0, dtype=np.int64)
        self.block_axis = np.concatenate(axis_of) if axis_of else np.zeros(0, dtype=np.int64)
        self.bptr = np.concatenate(([0], np.cumsum(self.block_size))).astype(np.int64)
        self.members = members
        self._index = None
        self._vertices = None
        self._karrays = None
        self._hyper = None

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"LineGraph(r={self.r}, n={self.n}, p={self.p})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LineGraph):
            return NotImplemented
        return (self.r == other.r and self.part_sizes == other.part_sizes
                and self.names == other.names and np.array_equal(self.coords, other.coords))

    __hash__ = None

    def vertices(self) -> list[Vertex]:
        if self._vertices is None:
            self._vertices = [tuple(row) for row in self.coords.tolist()]
        return self._vertices

    def vertex(self, i: int) -> Vertex:
        return self.vertices()[i]

    def index(self, v: Sequence[int]) -> int:
        if self._index is None:
            self._index = {t: i for i, t in enumerate(self.vertices())}
        return self._index[tuple(v)]

    def __contains__(self, v) -> bool:
        try:
            self.index(v)
        except (KeyError, TypeError):
            return False
        return True

    def ids(self, X: Iterable[Sequence[int]]) -> np.ndarray:
        return np.asarray(sorted({self.index(v) for v in X}), dtype=np.int64)

    @property
    def p(self) -> int:
        return len(self.block_size)

    @property
    def density(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(self.r * self.n, self.p)

    @property
    def min_degree(self) -> int:
        return int(self.block_size.min()) if self.n else 0

    def stats(self) -> DensityStats:
        return DensityStats(self.n, self.p, self.density, self.min_degree)

    def block_members(self, v: int, axis: int) -> np.ndarray:
        b = self.block_of[axis, v]
        return self.members[self.bptr[b]:self.bptr[b + 1]]

    def blocks(self, axis: int | None = None) -> list[np.ndarray]:
        out = []
        for b in range(self.p):
            if axis is None or self.block_axis[b] == axis:
                out.append(self.members[self.bptr[b]:self.bptr[b + 1]])
        return out

    def neighbor_ids(self, v: int) -> set[int]:
        out: set[int] = set()
        for a in range(self.r):
            out.update(self.block_members(v, a).tolist())
        out.discard(v)
        return out

    def neighborhood_ids(self, ids: Iterable[int]) -> set[int]:
        """N(X) for a set of vertex ids."""
        X = set(int(i) for i in ids)
        blocks = {int(b) for a in range(self.r) for b in self.block_of[a, list(X)]} if X else set()
        out: set[int] = set()
        for b in blocks:
            out.update(self.members[self.bptr[b]:self.bptr[b + 1]].tolist())
        return out - X

    def coordinate_name(self, axis: int, element: int) -> int:
        return self.names[axis][element]

    def global_coordinates(self, v: int) -> list[int]:
        return self.gcoords[v].tolist()

    # -- derived graphs -----------------------------------------------------

    def subgraph(self, ids) -> LineGraph:
        """Induced subgraph on vertex ids (array, list, or boolean mask)."""
        ids = np.asarray(ids)
        if ids.dtype == bool:
            ids = np.flatnonzero(ids)
        ids = np.unique(ids.astype(np.int64))
        return LineGraph._from_sorted(self.r, self.part_sizes, self.coords[ids], self.names)

    def keep_mask_without(self, global_ids: Iterable[int]) -> np.ndarray:
        banned = np.fromiter(global_ids, dtype=np.int64)
        if banned.size == 0 or self.n == 0:
            return np.ones(self.n, dtype=bool)
        return ~np.isin(self.gcoords, banned).any(axis=1)

    def without_global(self, global_ids: Iterable[int]) -> LineGraph:
        mask = self.keep_mask_without(global_ids)
        if mask.all():
            return self
        return self.subgraph(mask)

    def to_global(self, c: Coordinate | tuple[int, int]) -> int:
        part, element = c
        return int(self.offsets[part]) + int(element)

    def from_global(self, g: int) -> Coordinate:
        part = int(np.searchsorted(self.offsets, g, side="right")) - 1
        return Coordinate(part, int(g - self.offsets[part]))

    def to_hypergraph(self) -> Hypergraph:
        labels_of = {}
        for part, ids in enumerate(self.names):
            for v in ids:
                labels_of[v] = part
        n = len(labels_of)
        if sorted(labels_of) != list(range(n)):
            raise ValueError("names do not cover 0..N-1")
        labels = tuple(labels_of[v] for v in range(n))
        edges = tuple(tuple(self.names[a][e] for a, e in enumerate(row)) for row in self.vertices())
        return Hypergraph(self.r, n, edges, labels)

    def hyperedge_set(self) -> frozenset:
        if self._hyper is None:
            self._hyper = frozenset(
                frozenset(self.names[a][e] for a, e in enumerate(row)) for row in self.vertices())
        return self._hyper

    # -- kernel views -------------------------------------------------------

    def kernel_arrays(self):
        """Flat contiguous arrays in the layout the compiled kernels expect."""
        if self._karrays is None:
            self._karrays = (
                np.ascontiguousarray(self.gcoords.reshape(-1)),
                np.ascontiguousarray(self.block_of.reshape(-1)),
                self.bptr,
                self.members,
                int(sum(self.part_sizes)),
            )
        return self._karrays

    def adjacency_masks(self) -> list[int]:
        if self.n > 32:
            raise ValueError("bitmask adjacency needs n <= 32")
        return [sum(1 << w for w in self.neighbor_ids(v)) for v in range(self.n)]


# -- module-level operations -------------------------------------------------


def from_hypergraph(H: Hypergraph) -> LineGraph:
    """One line-graph vertex per hyperedge; coordinate i is the edge's part-i vertex."""
    if H.labels is None:
        raise ValueError("hypergraph must carry an r-partition (see make_r_partite)")
    parts = H.parts()
    position = {}
    for part in parts:
        for i, v in enumerate(part):
            position[v] = i
    rows = []
    for e in H.edges:
        row = [0] * H.r
        for v in e:
            row[H.labels[v]] = position[v]
        rows.append(row)
    return LineGraph(H.r, [len(p) for p in parts], rows, names=parts)


def to_hypergraph(G: LineGraph) -> Hypergraph:
    return G.to_hypergraph()


def stats(G: LineGraph) -> DensityStats:
    return G.stats()


def _block_split(G: LineGraph, X: set[int], axis: int) -> tuple[set[int], set[int]]:
    boundary: set[int] = set()
    if X:
        for b in {int(b) for b in G.block_of[axis, sorted(X)]}:
            mem = G.members[G.bptr[b]:G.bptr[b + 1]].tolist()
            inside = [v for v in mem if v in X]
            if len(inside) >= 2:
                boundary.update(mem)
            else:
                boundary.update(v for v in mem if v != inside[0])
    return boundary, boundary - X


def neighborhoods(G: LineGraph, X: Iterable[Sequence[int]], axis: int) -> tuple[set[Vertex], set[Vertex]]:
    """(i-boundary, i-neighbourhood) of X along ``axis``.

    The i-boundary holds every vertex with a neighbour in X that differs from
    it on ``axis``; the i-neighbourhood is the part of it outside X.
    """
    ids = {G.index(v) for v in X}
    boundary, nbhd = _block_split(G, ids, axis)
    V = G.vertices()
    return {V[i] for i in boundary}, {V[i] for i in nbhd}


def neighborhood(G: LineGraph, X: Iterable[Sequence[int]]) -> set[Vertex]:
    """Full neighbourhood N(X): vertices outside X adjacent to X."""
    V = G.vertices()
    return {V[i] for i in G.neighborhood_ids(G.index(v) for v in X)}


def delete_coordinates(G: LineGraph, U: Iterable[Coordinate | tuple[int, int]]) -> LineGraph:
    return G.without_global(G.to_global(c) for c in U)


def induced(G: LineGraph, X: Iterable[Sequence[int]]) -> LineGraph:
    return G.subgraph(G.ids(X))
