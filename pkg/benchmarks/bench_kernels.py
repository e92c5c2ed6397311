"""Compiled kernels vs the numpy/Python fallback on representative inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-N time for each backend and
the speedup. Both backends are also checked to return identical results.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from tightcycle import _kernels
from tightcycle.generators import gen_full_grid, gen_random_rpartite
from tightcycle.linegraph import from_hypergraph


def cases():
    small = from_hypergraph(gen_random_rpartite(4, 3, 0.3, seed=7))
    while small.n > 20:
        small = small.subgraph(np.arange(20))
    masks = small.adjacency_masks()
    yield "boundary_minima n=%d" % small.n, "boundary_minima", (masks, small.n, small.n - 1)

    G = from_hypergraph(gen_full_grid(12, 3))
    gco, blk, bptr, mem, nc = G.kernel_arrays()
    front = np.arange(0, G.n, 7, dtype=np.int64)
    fptr = np.arange(len(front) + 1, dtype=np.int64) * 3
    fids = gco.reshape(G.n, 3)[front].reshape(-1).copy()
    sigma = np.array([2, 0, 1], dtype=np.int64)
    yield ("sigma_expand grid 12^3, %d sources" % len(front), "sigma_expand",
           (front, fptr, fids, gco, blk, bptr, mem, sigma, 3, G.n, nc))

    order = _kernels.fallback.bfs_order(0, blk, bptr, mem, 3, G.n)
    yield "sweep_profile grid 12^3", "sweep_profile", (order, blk, bptr, mem, 3, G.n)
    yield "bfs_order grid 12^3", "bfs_order", (0, blk, bptr, mem, 3, G.n)


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels.compiled is None:
        print("compiled core not built; only the fallback is available")
        return 1
    print(f"{'kernel':44s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for label, name, call_args in cases():
        fast = getattr(_kernels.compiled, name)
        slow = getattr(_kernels.fallback, name)
        if not _same(fast(*call_args), slow(*call_args)):
            print(f"{label}: backends disagree")
            return 1
        tf = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        ts = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        print(f"{label:44s} {tf * 1e3:9.2f}ms {ts * 1e3:9.2f}ms {ts / tf:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
