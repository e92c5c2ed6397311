"""Extremal, structured and random hypergraph generators."""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .hypergraph import Hypergraph, partitioned


def gen_star(n: int, r: int) -> Hypergraph:
    """All r-subsets of ``0..n-1`` containing vertex 0 (no tight cycle)."""
    if n < r:
        raise ValueError("need n >= r")
    edges = tuple((0, *rest) for rest in itertools.combinations(range(1, n), r - 1))
    return Hypergraph(r, n, edges)


def gen_complete_multipartite(part_sizes: Sequence[int]) -> Hypergraph:
    if len(part_sizes) < 2 or any(s < 1 for s in part_sizes):
        raise ValueError("need at least two parts, each nonempty")
    start = 0
    ranges = []
    for s in part_sizes:
        ranges.append(range(start, start + s))
        start += s
    return partitioned(len(part_sizes), part_sizes, itertools.product(*ranges))


def gen_full_grid(m: int, r: int) -> Hypergraph:
    return gen_complete_multipartite([m] * r)


def gen_tight_cycle(length: int, r: int) -> Hypergraph:
    """The r-uniform tight cycle on ``length`` vertices.

    When r divides ``length`` the result is partitioned, with the cycle
    position ``j`` mapped to vertex ``(j % r) * (length // r) + j // r`` so
    parts are contiguous; :func:`tight_cycle_order` returns that sequence.
    """
    if length < r + 1:
        raise ValueError("a tight cycle needs at least r+1 vertices")
    order = tight_cycle_order(length, r)
    edges = tuple(tuple(order[(j + t) % length] for t in range(r)) for j in range(length))
    if length % r == 0:
        return partitioned(r, [length // r] * r, edges)
    return Hypergraph(r, length, edges)


def tight_cycle_order(length: int, r: int) -> list[int]:
    if length % r:
        return list(range(length))
    k = length // r
    return [(j % r) * k + j // r for j in range(length)]


def gen_random_rpartite(m: int, r: int, p: float, seed: int) -> Hypergraph:
    """Each of the m**r rainbow tuples is an edge independently with probability p."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    ranges = [range(i * m, (i + 1) * m) for i in range(r)]
    edges = [t for t in itertools.product(*ranges) if rng.random() < p]
    return partitioned(r, [m] * r, edges)


def gen_random_uniform(n: int, r: int, num_edges: int, seed: int) -> Hypergraph:
    """``num_edges`` distinct r-subsets of ``0..n-1`` drawn uniformly (unpartitioned)."""
    rng = random.Random(seed)
    pool = list(itertools.combinations(range(n), r))
    return Hypergraph(r, n, tuple(rng.sample(pool, min(num_edges, len(pool)))))
