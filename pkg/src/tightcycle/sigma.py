"""σ-neighbourhoods, σ-boundaries with forbidden coordinates, and σ-paths.

Permutations are tuples of 0-based axes: ``sigma[t]`` is the axis rewritten
at step ``t``. A σ-path ``x_1, ..., x_k`` is stored by its vertices; its
coordinate sequence lists each vertex's coordinates in σ order, and every
window of r consecutive coordinates is a vertex of the host graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .linegraph import Coordinate, LineGraph, Vertex

AT_MOST = "at_most"
EXACTLY = "exactly"


def check_permutation(sigma: Sequence[int], r: int) -> tuple[int, ...]:
    sigma = tuple(int(a) for a in sigma)
    if sorted(sigma) != list(range(r)):
        raise ValueError(f"{sigma} is not a permutation of 0..{r - 1}")
    return sigma


def reverse(sigma: Sequence[int]) -> tuple[int, ...]:
    """The reverse permutation: ``tau[i] = sigma[r-1-i]``."""
    return tuple(reversed(tuple(sigma)))


def all_permutations(r: int) -> list[tuple[int, ...]]:
    return list(permutations(range(r)))


@dataclass(frozen=True)
class SigmaPath:
    sigma: tuple[int, ...]
    vertices: tuple[Vertex, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    def coordinates(self) -> list[Coordinate]:
        """The sequence a_1..a_{rk}: each vertex's coordinates in σ order."""
        return [Coordinate(a, v[a]) for v in self.vertices for a in self.sigma]

    def reversed(self) -> SigmaPath:
        return SigmaPath(reverse(self.sigma), tuple(reversed(self.vertices)))

    def __add__(self, other: SigmaPath) -> SigmaPath:
        """Concatenate paths sharing the junction vertex (``self.end == other.start``)."""
        if self.sigma != other.sigma or self.end != other.start:
            raise ValueError("paths do not join")
        return SigmaPath(self.sigma, self.vertices + other.vertices[1:])


def validate_coordinate_sequence(G: LineGraph, sigma: Sequence[int], seq: Sequence[Coordinate]) -> bool:
    r = G.r
    if not seq or len(seq) % r:
        return False
    if len(set(seq)) != len(seq):
        return False
    for i, c in enumerate(seq):
        if c[0] != sigma[i % r]:
            return False
    for i in range(len(seq) - r + 1):
        v = [0] * r
        for c in seq[i:i + r]:
            v[c[0]] = c[1]
        if tuple(v) not in G:
            return False
    return True


def validate_sigma_path(G: LineGraph, path: SigmaPath) -> bool:
    """All coordinates distinct and every window of r consecutive coordinates a vertex."""
    try:
        sigma = check_permutation(path.sigma, G.r)
    except ValueError:
        return False
    if any(len(v) != G.r for v in path.vertices):
        return False
    return validate_coordinate_sequence(G, sigma, path.coordinates())


# -- boundary sweeps ---------------------------------------------------------


def _expand(G: LineGraph, frontier: Sequence[int], forbidden: Sequence[Sequence[int]] | None,
            sigma: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Kernel call: σ-neighbours of ``frontier`` ids, first-claim predecessors."""
    gco, blk, bptr, members, ncoords = G.kernel_arrays()
    front = np.asarray(frontier, dtype=np.int64)
    if forbidden is None:
        fptr = np.zeros(len(front) + 1, dtype=np.int64)
        fids = np.zeros(0, dtype=np.int64)
    else:
        lens = [len(f) for f in forbidden]
        fptr = np.concatenate(([0], np.cumsum(lens))).astype(np.int64)
        fids = np.fromiter((c for f in forbidden for c in f), dtype=np.int64, count=int(fptr[-1]))
    sig = np.asarray(sigma, dtype=np.int64)
    if G.n == 0 or len(front) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return _kernels.sigma_expand(front, fptr, fids, gco, blk, bptr, members, sig, G.r, G.n, ncoords)


def sigma_neighbors(G: LineGraph, x: Sequence[int], sigma: Sequence[int]) -> set[Vertex]:
    """Vertices y reached from x by rewriting the axes in σ order, all intermediates present."""
    sigma = check_permutation(sigma, G.r)
    ys, _ = _expand(G, [G.index(x)], None, sigma)
    V = G.vertices()
    return {V[i] for i in ys.tolist()}


def sigma_boundary(G: LineGraph, X: Iterable[Sequence[int]], sigma: Sequence[int],
                   forbidden: Mapping[Vertex, Iterable[Coordinate]] | None = None) -> set[Vertex]:
    """σ-neighbours y of some x in X such that no coordinate of y lies in F(x)."""
    sigma = check_permutation(sigma, G.r)
    ids = sorted({G.index(v) for v in X})
    F = None
    if forbidden:
        V = G.vertices()
        F = [[G.to_global(c) for c in forbidden.get(V[i], ())] for i in ids]
    ys, _ = _expand(G, ids, F, sigma)
    V = G.vertices()
    return {V[i] for i in ys.tolist()}


def axis_boundary(G: LineGraph, X: Iterable[Sequence[int]], axis: int,
                  forbidden: Mapping[Vertex, Iterable[Coordinate]] | None = None) -> set[Vertex]:
    """Single-axis boundary: y differing from some x in X only on ``axis``, y's coordinates outside F(x)."""
    ids = sorted({G.index(v) for v in X})
    F = {}
    if forbidden:
        V = G.vertices()
        F = {i: {G.to_global(c) for c in forbidden.get(V[i], ())} for i in ids}
    gc = G.gcoords
    out = set()
    for x in ids:
        bad = F.get(x, ())
        for y in G.block_members(x, axis).tolist():
            if y != x and not any(int(c) in bad for c in gc[y]):
                out.add(y)
    V = G.vertices()
    return {V[i] for i in out}


def sigma_boundary_ids(G: LineGraph, ids: Sequence[int], sigma: Sequence[int]) -> np.ndarray:
    ys, _ = _expand(G, sorted(ids), None, sigma)
    return ys


# -- reachability ------------------------------------------------------------


class ReachTree:
    """Round-by-round σ-reachability from one root, one stored path per (round, vertex).

    ``layers[i]`` maps each vertex id reached by a path of size ``i+1`` to its
    predecessor in ``layers[i-1]``. The forbidden set used when expanding a
    vertex is the coordinate set of its stored path minus the vertex itself.
    """

    def __init__(self, G: LineGraph, root: int, sigma: Sequence[int], max_size: int,
                 mode: str = AT_MOST, patience: int | None = 2):
        if mode not in (AT_MOST, EXACTLY):
            raise ValueError(f"unknown mode {mode!r}")
        self.G = G
        self.sigma = check_permutation(sigma, G.r)
        self.root = root
        self.mode = mode
        self.layers: list[dict[int, int]] = [{root: -1}]
        self.first_seen: dict[int, int] = {root: 0}
        if max_size < 1:
            self.layers = []
            self.first_seen = {}
            return
        gc = G.gcoords.tolist()
        # path coordinates (excluding the vertex itself) for the current layer
        carried: dict[int, tuple[int, ...]] = {root: ()}
        stale = 0
        for size in range(2, max_size + 1):
            front = sorted(carried)
            ys, preds = _expand(G, front, [carried[v] for v in front], self.sigma)
            if len(ys) == 0:
                break
            layer = dict(zip(ys.tolist(), preds.tolist()))
            self.layers.append(layer)
            grew = False
            for y in layer:
                if y not in self.first_seen:
                    self.first_seen[y] = size - 1
                    grew = True
            carried = {y: carried[p] + tuple(gc[p]) for y, p in layer.items()}
            if mode == AT_MOST and patience is not None:
                stale = 0 if grew else stale + 1
                if stale >= patience:
                    break

    def path_ids(self, v: int, layer: int | None = None) -> list[int]:
        if layer is None:
            layer = self.first_seen[v]
        out = [v]
        while layer > 0:
            v = self.layers[layer][v]
            layer -= 1
            out.append(v)
        out.reverse()
        return out

    def path(self, v: int, layer: int | None = None) -> SigmaPath:
        V = self.G.vertices()
        return SigmaPath(self.sigma, tuple(V[i] for i in self.path_ids(v, layer)))

    def reached(self) -> dict[int, int]:
        """Vertex id -> size of its earliest stored path."""
        return {v: layer + 1 for v, layer in self.first_seen.items()}

    def sizes_of(self, v: int) -> list[int]:
        return [i + 1 for i, layer in enumerate(self.layers) if v in layer]


def reach(G: LineGraph, x: Sequence[int], sigma: Sequence[int], max_size: int,
          mode: str = AT_MOST, patience: int | None = 2) -> dict[Vertex, SigmaPath]:
    """Vertices reachable from ``x`` by a σ-path, with one witness path each.

    In ``at_most`` mode every vertex reached by a path of size at most
    ``max_size`` is reported with its earliest path; the search stops early
    once ``patience`` consecutive rounds add no new vertex (``None`` disables
    this). In ``exactly`` mode only paths of size exactly ``max_size`` count.
    """
    tree = ReachTree(G, G.index(x), sigma, max_size, mode, patience)
    V = G.vertices()
    if mode == EXACTLY:
        if len(tree.layers) < max_size:
            return {}
        return {V[v]: tree.path(v, max_size - 1) for v in sorted(tree.layers[max_size - 1])}
    return {V[v]: tree.path(v) for v in sorted(tree.first_seen)}


# -- serialization -----------------------------------------------------------


def format_sigma_path(G: LineGraph, path: SigmaPath) -> str:
    """``SP sigma=<1-based perm> k=<size>`` then one line per vertex of hypergraph ids."""
    perm = ",".join(str(a + 1) for a in path.sigma)
    lines = [f"SP sigma={perm} k={path.size}"]
    for v in path.vertices:
        lines.append(" ".join(str(G.coordinate_name(a, e)) for a, e in enumerate(v)))
    return "\n".join(lines) + "\n"


def parse_sigma_path(G: LineGraph, text: str) -> SigmaPath:
    from .errors import FormatError
    from .hypergraph import significant_lines

    lines = significant_lines(text)
    if not lines:
        raise FormatError("empty input", 1)
    lineno, head = lines[0]
    tokens = head.split()
    if len(tokens) != 3 or tokens[0] != "SP" or not tokens[1].startswith("sigma=") or not tokens[2].startswith("k="):
        raise FormatError("expected 'SP sigma=<perm> k=<size>'", lineno)
    try:
        sigma = tuple(int(a) - 1 for a in tokens[1][6:].split(","))
        k = int(tokens[2][2:])
    except ValueError:
        raise FormatError("bad SP header", lineno) from None
    if len(lines) - 1 != k:
        raise FormatError(f"expected {k} vertex lines, found {len(lines) - 1}", lineno)
    element_of = [{name: e for e, name in enumerate(part)} for part in G.names]
    verts = []
    for lineno, text in lines[1:]:
        try:
            ids = [int(t) for t in text.split()]
            verts.append(tuple(element_of[a][v] for a, v in enumerate(ids)))
        except (ValueError, KeyError, IndexError):
            raise FormatError("vertex line does not match the graph's parts", lineno) from None
        if len(ids) != G.r:
            raise FormatError(f"vertex line must list {G.r} ids", lineno)
    return SigmaPath(sigma, tuple(verts))
