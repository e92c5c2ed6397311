"""Ground truth for tight cycles: an exhaustive search and a validator.

Neither function shares code with the line-graph search; the validator is
the final word on every cycle the library emits.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import permutations
from typing import Sequence

from .errors import TooLarge
from .hypergraph import Hypergraph

DEFAULT_MAX_VERTICES = 14


def validate_tight_cycle(H: Hypergraph, w: Sequence[int]) -> bool:
    """True iff ``w`` is a tight cycle of ``H``.

    Requires at least r+1 distinct vertices and every cyclic window of r
    consecutive vertices to be an edge.
    """
    r = H.r
    length = len(w)
    if length < r + 1 or len(set(w)) != length:
        return False
    return all(H.has_edge(w[(i + t) % length] for t in range(r)) for i in range(length))


def _extensions(H: Hypergraph) -> dict[frozenset, list[int]]:
    ext: dict[frozenset, list[int]] = defaultdict(list)
    for e in H.edges:
        for v in e:
            ext[frozenset(e) - {v}].append(v)
    for k in ext:
        ext[k].sort()
    return ext


def brute_force_tight_cycle(H: Hypergraph, max_len: int | None = None,
                            max_vertices: int = DEFAULT_MAX_VERTICES) -> tuple[int, ...] | None:
    """Shortest tight cycle of length at most ``max_len``, or None.

    Depth-first over tight paths whose first vertex is the smallest on the
    cycle, with iterative deepening on the length. Isolated vertices do not
    count toward ``max_vertices``.
    """
    r = H.r
    active = sorted({v for e in H.edges for v in e})
    if len(active) > max_vertices:
        raise TooLarge(f"{len(active)} non-isolated vertices exceeds cap {max_vertices}")
    if max_len is None:
        max_len = len(active)
    if max_len < r + 1:
        return None
    ext = _extensions(H)
    by_vertex: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for e in H.edges:
        by_vertex[e[0]].append(e)  # edges are sorted, so e[0] is the minimum

    def closes(path: list[int]) -> bool:
        ell = len(path)
        return all(H.has_edge(path[(ell - r + j + t) % ell] for t in range(r)) for j in range(1, r))

    def extend(path: list[int], on_path: set[int], target: int, start: int):
        if len(path) == target:
            return tuple(path) if closes(path) else None
        for v in ext.get(frozenset(path[-(r - 1):]), ()):
            if v > start and v not in on_path:
                path.append(v)
                on_path.add(v)
                found = extend(path, on_path, target, start)
                if found:
                    return found
                path.pop()
                on_path.discard(v)
        return None

    for target in range(r + 1, max_len + 1):
        for s in active:
            for e in by_vertex[s]:
                for rest in permutations(e[1:]):
                    path = [s, *rest]
                    found = extend(path, set(path), target, s)
                    if found:
                        return found
    return None
