"""r-uniform hypergraphs and the ``HG`` text format.

Format (canonical form is what :func:`format_hypergraph` writes)::

    HG r=3 n=6 parts=2,2,2
    0 2 4
    0 2 5
    ...

``parts`` lists part sizes; part ``i`` owns a contiguous id range.
``parts=none`` marks an unpartitioned hypergraph. ``#`` starts a comment.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import FormatError


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n-1``.

    ``labels`` (optional) assigns each vertex a part ``0..r-1``; when present
    every edge must meet each part exactly once.
    """

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None
    _edge_set: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("uniformity must be at least 2")
        canon = sorted({tuple(sorted(e)) for e in self.edges})
        for e in canon:
            if len(e) != self.r or len(set(e)) != self.r:
                raise ValueError(f"edge {e} is not an {self.r}-set")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"edge {e} has a vertex outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "_edge_set", frozenset(frozenset(e) for e in canon))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n or any(not 0 <= p < self.r for p in labels):
                raise ValueError("labels must give a part in 0..r-1 for every vertex")
            for e in canon:
                if len({labels[v] for v in e}) != self.r:
                    raise ValueError(f"edge {e} does not meet every part once")
            object.__setattr__(self, "labels", labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_partitioned(self) -> bool:
        return self.labels is not None

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return frozenset(vertices) in self._edge_set

    def part_sizes(self) -> tuple[int, ...] | None:
        """Part sizes if the labels are contiguous and nondecreasing, else None."""
        if self.labels is None:
            return None
        if any(a > b for a, b in zip(self.labels, self.labels[1:])):
            return None
        return tuple(self.labels.count(i) for i in range(self.r))

    def parts(self) -> list[list[int]]:
        if self.labels is None:
            raise ValueError("hypergraph is not partitioned")
        out: list[list[int]] = [[] for _ in range(self.r)]
        for v, p in enumerate(self.labels):
            out[p].append(v)
        return out

    def relabel_contiguous(self) -> tuple[Hypergraph, list[int]]:
        """Renumber vertices so parts are contiguous; returns (H', new->old)."""
        order = [v for part in self.parts() for v in part]
        new_of = {old: new for new, old in enumerate(order)}
        labels = tuple(self.labels[old] for old in order)
        edges = [tuple(new_of[v] for v in e) for e in self.edges]
        return Hypergraph(self.r, self.n, tuple(edges), labels), order


def partitioned(r: int, part_sizes: Sequence[int], edges: Iterable[Sequence[int]]) -> Hypergraph:
    labels = tuple(i for i, size in enumerate(part_sizes) for _ in range(size))
    return Hypergraph(r, len(labels), tuple(tuple(e) for e in edges), labels)


def make_r_partite(H: Hypergraph, seed: int = 0, trials: int = 64,
                   max_extra_trials: int = 100_000) -> Hypergraph:
    """Best r-partite sub-hypergraph over random vertex r-colourings.

    Runs ``trials`` colourings, then keeps sampling (up to
    ``max_extra_trials``) until the kept edge count reaches the expectation
    ``r!/r^r * |E|``, which some colouring always attains.
    """
    r = H.r
    if H.labels is not None:
        return H
    if not H.edges:
        return Hypergraph(r, H.n, (), tuple(0 for _ in range(H.n)))
    rng = random.Random(seed)
    target = math.ceil(math.factorial(r) * H.num_edges / r**r)
    best_labels: list[int] | None = None
    best_count = -1
    t = 0
    while t < trials or (best_count < target and t < trials + max_extra_trials):
        labels = [rng.randrange(r) for _ in range(H.n)]
        count = sum(1 for e in H.edges if len({labels[v] for v in e}) == r)
        if count > best_count:
            best_count, best_labels = count, labels
        t += 1
    kept = tuple(e for e in H.edges if len({best_labels[v] for v in e}) == r)
    return Hypergraph(r, H.n, kept, tuple(best_labels))


# -- text format -------------------------------------------------------------


def format_hypergraph(H: Hypergraph) -> str:
    if H.labels is None:
        parts = "none"
    else:
        sizes = H.part_sizes()
        if sizes is None:
            raise ValueError("parts must be contiguous to serialize; use relabel_contiguous()")
        parts = ",".join(str(s) for s in sizes)
    lines = [f"HG r={H.r} n={H.n} parts={parts}"]
    lines.extend(" ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(lines) + "\n"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _header_fields(text: str, lineno: int, tag: str, keys: Sequence[str]) -> dict[str, str]:
    tokens = text.split()
    if not tokens or tokens[0] != tag:
        raise FormatError(f"expected '{tag}' header", lineno)
    fields: dict[str, str] = {}
    for tok in tokens[1:]:
        key, sep, value = tok.partition("=")
        if not sep or key not in keys or key in fields:
            raise FormatError(f"bad header field {tok!r}", lineno)
        fields[key] = value
    missing = [k for k in keys if k not in fields]
    if missing:
        raise FormatError(f"header missing {', '.join(missing)}", lineno)
    return fields


def _int(value: str, lineno: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {value!r}", lineno) from None


def parse_hypergraph_lines(lines: Sequence[tuple[int, str]]) -> Hypergraph:
    """Parse ``(lineno, text)`` pairs with comments and blanks already removed."""
    if not lines:
        raise FormatError("empty input", 1)
    lineno, head = lines[0]
    fields = _header_fields(head, lineno, "HG", ("r", "n", "parts"))
    r = _int(fields["r"], lineno, "r")
    n = _int(fields["n"], lineno, "n")
    if r < 2 or n < 0:
        raise FormatError("need r >= 2 and n >= 0", lineno)
    labels = None
    if fields["parts"] != "none":
        sizes = [_int(s, lineno, "part size") for s in fields["parts"].split(",")]
        if len(sizes) != r or any(s < 0 for s in sizes) or sum(sizes) != n:
            raise FormatError("parts must be r nonnegative sizes summing to n", lineno)
        labels = tuple(i for i, s in enumerate(sizes) for _ in range(s))
    edges = []
    seen = set()
    for lineno, text in lines[1:]:
        e = tuple(_int(tok, lineno, "vertex id") for tok in text.split())
        if len(e) != r or len(set(e)) != r:
            raise FormatError(f"edge must list {r} distinct vertex ids", lineno)
        if min(e) < 0 or max(e) >= n:
            raise FormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if labels is not None and len({labels[v] for v in e}) != r:
            raise FormatError("edge does not meet every part exactly once", lineno)
        key = frozenset(e)
        if key in seen:
            raise FormatError("duplicate edge", lineno)
        seen.add(key)
        edges.append(e)
    return Hypergraph(r, n, tuple(edges), labels)


def significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = _strip(raw)
        if s:
            out.append((i, s))
    return out


def parse_hypergraph(text: str) -> Hypergraph:
    return parse_hypergraph_lines(significant_lines(text))


def offsets(part_sizes: Sequence[int]) -> list[int]:
    return [0, *accumulate(part_sizes)][:-1]
