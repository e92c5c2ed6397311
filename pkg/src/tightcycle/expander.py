"""Minimum-degree peeling, expander extraction and exact expansion checks.

A graph is a λ-expander when every X with |X| <= n/2 has |N(X)| >= λ|X|,
and a (λ, d)-expander when in addition every block has at least d vertices.
All density and ratio comparisons are exact (``fractions.Fraction``).
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ExpansionFailed, PreconditionError, TooLarge
from .linegraph import LineGraph, Vertex

DEFAULT_EXACT_THRESHOLD = 20
CERT_CSV_COLUMNS = ("n", "p", "density", "delta", "lambda", "mode", "witness_size")


def exact_threshold(override: int | None = None) -> int:
    """Size cap for exhaustive expansion checks (env ``TIGHTCYCLE_EXACT_THRESHOLD``)."""
    if override is not None:
        value = override
    else:
        value = int(os.environ.get("TIGHTCYCLE_EXACT_THRESHOLD", DEFAULT_EXACT_THRESHOLD))
    return max(0, min(value, _kernels.MAX_EXHAUSTIVE))


def fmt_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(x)


@dataclass(frozen=True)
class ExpanderParams:
    lam: float | Fraction
    d: int | Fraction | None = None
    epsilon: float | Fraction = Fraction(1, 10)

    def __post_init__(self):
        if not 0 < self.lam <= 1:
            raise ValueError("lambda must lie in (0, 1]")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.d is not None and self.d <= 0:
            raise ValueError("d must be positive")


@dataclass(frozen=True)
class ExpanderCertificate:
    """What is known about an extracted expander.

    ``mode`` is ``"exact"`` when no set with |X| <= n/2 violates expansion
    (checked exhaustively) and ``"heuristic"`` when only the sweep search
    came up empty. ``d`` is the certified minimum degree.
    """

    lam: float | Fraction
    d: int
    mode: str
    witness: tuple[Vertex, ...] | None = None
    n: int = 0
    p: int = 0
    density: Fraction = Fraction(0)
    iterations: int = 0

    def csv_row(self) -> list[str]:
        return [str(self.n), str(self.p), fmt_number(self.density), str(self.d),
                fmt_number(self.lam), self.mode,
                "" if self.witness is None else str(len(self.witness))]


# -- peeling -----------------------------------------------------------------


def peel(G: LineGraph, d) -> LineGraph:
    """Delete blocks of size < d/r until none is left; density never drops.

    Requires density(G) >= d. The smallest offending block goes first, ties
    broken by lowest (axis, block id).
    """
    d = Fraction(d)
    if G.n == 0 or G.density < d:
        raise PreconditionError(f"peel needs density >= {d}, graph has {G.density}")
    r = G.r
    threshold = d / r
    size = G.block_size.tolist()
    block_of = G.block_of.tolist()
    bptr = G.bptr.tolist()
    members = G.members.tolist()
    alive = [True] * G.n
    alive_count = G.n
    nonempty = len(size)
    heap = [(s, b) for b, s in enumerate(size) if s < threshold]
    heapq.heapify(heap)
    while heap:
        s, b = heapq.heappop(heap)
        if size[b] != s or s == 0:
            continue
        before = Fraction(r * alive_count, nonempty)
        for v in members[bptr[b]:bptr[b + 1]]:
            if not alive[v]:
                continue
            alive[v] = False
            alive_count -= 1
            for a in range(r):
                bb = block_of[a][v]
                size[bb] -= 1
                if size[bb] == 0:
                    nonempty -= 1
                elif size[bb] < threshold:
                    heapq.heappush(heap, (size[bb], bb))
        after = Fraction(r * alive_count, nonempty) if nonempty else Fraction(0)
        if after < before:
            raise RuntimeError("peeling decreased density")  # contradicts the peeling inequality
    if alive_count == G.n:
        return G
    return G.subgraph(np.asarray(alive, dtype=bool))


# -- sparse cuts -------------------------------------------------------------


def expansion_table(G: LineGraph, max_size: int | None = None) -> tuple[list[int], list[int]]:
    """min |N(X)| over |X| = s for s = 1..max_size, with the argmin bitmask."""
    if G.n > _kernels.MAX_EXHAUSTIVE:
        raise TooLarge(f"n={G.n} too large for exhaustive enumeration")
    if max_size is None:
        max_size = G.n // 2
    return _kernels.boundary_minima(G.adjacency_masks(), G.n, max_size)


def _mask_ids(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def components(G: LineGraph) -> list[np.ndarray]:
    _, blk, bptr, members, _ = G.kernel_arrays()
    seen = np.zeros(G.n, dtype=bool)
    out = []
    for v in range(G.n):
        if not seen[v]:
            comp = _kernels.bfs_order(v, blk, bptr, members, G.r, G.n)
            seen[comp] = True
            out.append(np.sort(comp))
    return out


def _sweep_seeds(G: LineGraph, max_seeds: int) -> list[int]:
    firsts = list(dict.fromkeys(G.members[G.bptr[:-1]].tolist()))
    if len(firsts) <= max_seeds:
        return firsts
    step = len(firsts) / max_seeds
    return [firsts[int(i * step)] for i in range(max_seeds)]


def _sparse_cut_ids(G: LineGraph, lam: Fraction, threshold: int,
                    max_seeds: int = 16) -> tuple[list[int] | None, bool]:
    """(witness ids or None, whether the search was exhaustive)."""
    n = G.n
    half = n // 2
    if half == 0:
        return None, True
    if n <= threshold:
        best, arg = expansion_table(G, half)
        candidates = [s for s in range(1, half + 1) if best[s] < lam * s]
        if not candidates:
            return None, True
        s = min(candidates, key=lambda s: (Fraction(best[s], s), s))
        return _mask_ids(arg[s]), True

    comps = components(G)
    if len(comps) > 1:
        smallest = min(comps, key=lambda c: (len(c), int(c[0])))
        return smallest.tolist(), False

    _, blk, bptr, members, _ = G.kernel_arrays()
    best_ratio = math.inf
    best_w = None
    for seed in _sweep_seeds(G, max_seeds):
        order = _kernels.bfs_order(seed, blk, bptr, members, G.r, n)
        prof = _kernels.sweep_profile(order[:half], blk, bptr, members, G.r, n)
        ratios = prof / np.arange(1, len(prof) + 1)
        k = int(np.argmin(ratios))
        if ratios[k] < best_ratio:
            best_ratio = float(ratios[k])
            best_w = order[:k + 1]
    if best_w is None:
        return None, False
    W = sorted(best_w.tolist())
    if len(G.neighborhood_ids(W)) < lam * len(W):
        return W, False
    return None, False


def find_sparse_cut(G: LineGraph, lam, exact_threshold_override: int | None = None,
                    max_seeds: int = 16) -> tuple[Vertex, ...] | None:
    """A set W with |W| <= n/2 and |N(W)| < λ|W|, or None if the search found none.

    Exhaustive when n is at most the exact threshold; otherwise a component
    split followed by BFS sweep cuts, so None is not a proof of expansion.
    Any returned W has been re-checked.
    """
    lam = Fraction(lam)
    ids, _ = _sparse_cut_ids(G, lam, exact_threshold(exact_threshold_override), max_seeds)
    if ids is None:
        return None
    if not (len(ids) <= G.n / 2 and len(G.neighborhood_ids(ids)) < lam * len(ids)):
        raise RuntimeError("sparse-cut witness failed re-verification")
    V = G.vertices()
    return tuple(V[i] for i in ids)


# -- extraction --------------------------------------------------------------


def extract_expander(G: LineGraph, params: ExpanderParams,
                     exact_threshold_override: int | None = None,
                     max_seeds: int = 16) -> tuple[LineGraph, ExpanderCertificate]:
    """Find a λ-expander H in G with δ(H) >= d/(2r) and density >= d(1 - λ log2 n).

    Peels to minimum degree d/r, then repeatedly finds a sparse cut W and
    keeps either W (if its density stays above (1-λ) times the current one)
    or the complement of W ∪ N(W), re-peeling after each step. The density
    bound is guaranteed when λ <= 1/(2 log2 n).
    """
    lam = Fraction(params.lam)
    d = Fraction(params.d) if params.d is not None else G.density
    if G.n == 0:
        raise PreconditionError("cannot extract an expander from an empty graph")
    threshold = exact_threshold(exact_threshold_override)
    H = peel(G, d)
    floor = d / 2
    iterations = 0
    while True:
        if H.density < floor:
            raise ExpansionFailed(f"density {H.density} fell below {floor}")
        W, exhaustive = _sparse_cut_ids(H, lam, threshold, max_seeds)
        if W is None:
            break
        iterations += 1
        current = H.density
        side = H.subgraph(W)
        if side.density >= current * (1 - lam):
            H = peel(side, current * (1 - lam))
            continue
        blocked = set(W) | H.neighborhood_ids(W)
        rest = H.subgraph([v for v in range(H.n) if v not in blocked])
        if rest.n and rest.density >= current:
            H = peel(rest, current)
            continue
        raise RuntimeError("neither side of the sparse cut keeps its density")
    cert = ExpanderCertificate(
        lam=params.lam, d=H.min_degree, mode="exact" if exhaustive else "heuristic",
        n=H.n, p=H.p, density=H.density, iterations=iterations)
    return H, cert


def expander_cover(G: LineGraph, params: ExpanderParams,
                   exact_threshold_override: int | None = None,
                   max_seeds: int = 16) -> list[tuple[LineGraph, ExpanderCertificate]]:
    """Greedy vertex-disjoint expanders covering all but at most εn vertices."""
    eps = Fraction(params.epsilon)
    remaining = np.ones(G.n, dtype=bool)
    left = G.n
    pieces = []
    while left > eps * G.n:
        R = G.subgraph(remaining)
        H, cert = extract_expander(R, ExpanderParams(params.lam, R.density, params.epsilon),
                                   exact_threshold_override, max_seeds)
        pieces.append((H, cert))
        for v in H.vertices():
            remaining[G.index(v)] = False
        left -= H.n
    return pieces


def verify_expander_exact(G: LineGraph, lam, epsilon=None,
                          threshold: int | None = None) -> tuple[bool, tuple[Vertex, ...] | None]:
    """Exhaustively decide λ-expansion; with ``epsilon`` also check large sets.

    The large-set check asks |N(X)| >= (λε/2)|X| for every |X| <= (1-ε)n.
    Returns ``(ok, witness)`` where the witness violates one of the two.
    """
    cap = exact_threshold(threshold)
    if G.n > cap:
        raise TooLarge(f"n={G.n} exceeds the exhaustive threshold {cap}")
    lam = Fraction(lam)
    n = G.n
    half = n // 2
    upper = half
    if epsilon is not None:
        eps = Fraction(epsilon)
        upper = max(half, math.floor((1 - eps) * n))
    if upper == 0:
        return True, None
    best, arg = expansion_table(G, upper)
    V = G.vertices()
    for s in range(1, half + 1):
        if best[s] < lam * s:
            return False, tuple(V[i] for i in _mask_ids(arg[s]))
    if epsilon is not None:
        bound = lam * eps / 2
        for s in range(1, upper + 1):
            if best[s] < bound * s:
                return False, tuple(V[i] for i in _mask_ids(arg[s]))
    return True, None


def is_expander_witness(G: LineGraph, W: Sequence[Vertex], lam) -> bool:
    """Independent re-check that W refutes λ-expansion of G."""
    ids = {G.index(v) for v in W}
    return 0 < len(ids) <= G.n / 2 and len(G.neighborhood_ids(ids)) < Fraction(lam) * len(ids)
