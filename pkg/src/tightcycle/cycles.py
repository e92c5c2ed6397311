"""Balanced partitions, the two-sided σ-path connector, cycle splicing and
the density-increment search.

Every emitted path and cycle is re-validated from raw coordinates before it
leaves this module; the search itself is best effort at small sizes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import sigma as sg
from .errors import ExpansionFailed, PartitionFailed, PreconditionError
from .expander import ExpanderParams, expander_cover, extract_expander
from .linegraph import LineGraph, Vertex
from .oracle import validate_tight_cycle


class Stage(str, Enum):
    """Where a search stopped. Closed set; also used as CSV values."""

    EMPTY = "empty"
    TERMINAL = "terminal"
    EXPANDER = "expander"
    PAIR = "pair"
    PARTITION = "partition"
    COVER = "cover"
    REACH_X = "reach_x"
    REACH_Y = "reach_y"
    MEET = "meet"
    RETURN = "return"
    DEPTH = "depth"
    DONE = "done"


class Kind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    DENSE = "dense"
    FAILURE = "failure"


def proof_constants(r: int) -> dict[str, Fraction]:
    """The constants the existence proofs use, as exact rationals."""
    eps = Fraction(1, 2 ** (r + 6))
    c1 = eps ** 2 / (240 * r ** 4)
    c2 = 10 ** 5 * r ** 5 / eps ** 3
    c3 = 40 * r / eps
    c4 = eps / (6 * r)
    return {
        "epsilon": eps, "c1": c1, "c2": c2, "c3": c3, "c4": c4,
        "c1p": max(64 * r * c2, 256 * r ** 3 * c3),
        "c2p": c1 / (32 * r ** 2),
        "c3p": c4 / (4 * r),
    }


def default_lambda(n: int) -> Fraction:
    """1/(2 log2 n), rounded down to a multiple of 1e-6 so it stays below the bound."""
    if n <= 2:
        return Fraction(1, 2) if n == 2 else Fraction(1)
    return Fraction(math.floor(10 ** 6 / (2 * math.log2(n))), 10 ** 6)


@dataclass(frozen=True)
class SearchParams:
    """Knobs for the connector and the searches built on it.

    ``None`` means "derive": λ from the graph size, d from the measured
    density, ε and c4 from ``proof_constants``. ``strict_partition`` makes a
    failed balance check fatal instead of continuing with the most balanced
    candidate seen.
    """

    lam: Fraction | float | None = None
    d: Fraction | int | None = None
    K: Fraction | float = 2
    epsilon: Fraction | float | None = None
    c4: Fraction | float | None = None
    seed: int = 0
    partition_retries: int = 64
    strict_partition: bool = False
    pair_attempts: int = 3
    max_path_size: int | None = None
    patience: int = 2
    exact_threshold: int | None = None
    max_depth: int = 32
    max_seeds: int = 16

    def __post_init__(self):
        if self.K <= 1:
            raise ValueError("K must exceed 1")
        for name in ("lam", "d", "epsilon", "c4"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")
        if self.pair_attempts < 1 or self.partition_retries < 1:
            raise ValueError("attempt counts must be positive")

    def eps_for(self, r: int) -> Fraction:
        return Fraction(self.epsilon) if self.epsilon is not None else proof_constants(r)["epsilon"]

    def c4_for(self, r: int) -> Fraction:
        if self.c4 is not None:
            return Fraction(self.c4)
        return self.eps_for(r) / (6 * r)

    def lam_for(self, n: int) -> Fraction:
        return Fraction(self.lam) if self.lam is not None else default_lambda(n)


@dataclass(frozen=True)
class ChainStep:
    n: int
    p: int
    density: Fraction
    delta: int
    d_floor: int | None = None
    required_min_degree: Fraction | None = None


@dataclass
class SearchOutcome:
    kind: Kind
    stage: Stage = Stage.DONE
    path: sg.SigmaPath | None = None
    cycle: tuple[int, ...] | None = None
    cycle_vertices: tuple[Vertex, ...] | None = None
    subgraph: LineGraph | None = None
    min_degree: int | None = None
    size: int | None = None
    d_floor: int | None = None
    required_min_degree: Fraction | None = None
    chain: list[ChainStep] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def length(self) -> int | None:
        return None if self.cycle is None else len(self.cycle)


def _failure(stage: Stage, **detail) -> SearchOutcome:
    return SearchOutcome(Kind.FAILURE, stage=stage, detail=detail)


# -- balanced partitions -----------------------------------------------------


@dataclass(frozen=True)
class BalancedPartition:
    """Two-colouring of every part; ``sides[a][e]`` is 0 or 1 for element e of A_a."""

    sides: tuple[tuple[int, ...], ...]
    epsilon: Fraction
    block_ok: bool
    cell_ok: bool
    score: float

    @property
    def verified(self) -> bool:
        return self.block_ok and self.cell_ok

    def side_bits(self, G: LineGraph) -> np.ndarray:
        bits = np.zeros(G.n, dtype=np.int64)
        for a in range(G.r):
            bits |= np.asarray(self.sides[a], dtype=np.int64)[G.coords[:, a]] << a
        return bits

    def cell_mask(self, G: LineGraph, e: Sequence[int]) -> np.ndarray:
        code = sum(int(s) << a for a, s in enumerate(e))
        return self.side_bits(G) == code

    def cell(self, G: LineGraph, e: Sequence[int]) -> LineGraph:
        return G.subgraph(self.cell_mask(G, e))


def _partition_checks(G: LineGraph, sides, eps: Fraction) -> tuple[bool, bool, float]:
    r, n = G.r, G.n
    bits = np.zeros(n, dtype=np.int64)
    ones = np.zeros(G.p, dtype=np.int64)
    for a in range(r):
        s = np.asarray(sides[a], dtype=np.int64)[G.coords[:, a]]
        bits |= s << a
        ones += np.bincount(G.block_of[a], weights=s, minlength=G.p).astype(np.int64)
    size = G.block_size
    # |2c - |B|| * 2r <= eps |B|, with c the count on either side
    dev = np.abs(2 * ones - size)
    block_ok = bool((dev * 2 * r * eps.denominator <= eps.numerator * size).all())
    cells = np.bincount(bits, minlength=2 ** r)
    cdev = np.abs(cells * 2 ** r - n)
    cell_ok = bool((cdev * eps.denominator <= eps.numerator * n).all())
    fe = float(eps)
    score = max(float((dev / size).max()) / (fe / (2 * r)), float(cdev.max()) / n / fe)
    return block_ok, cell_ok, score


def balanced_partition(G: LineGraph, x: Sequence[int], y: Sequence[int], epsilon,
                       seed: int = 0, max_retries: int = 64) -> BalancedPartition:
    """Random split of each part with x on side 0 and y on side 1, checked exactly.

    Retries until both the per-block and the per-cell balance conditions
    hold. Raises ``PartitionFailed`` carrying the most balanced candidate.
    """
    x, y = tuple(x), tuple(y)
    if any(a == b for a, b in zip(x, y)):
        raise PreconditionError("x and y share a coordinate")
    if x not in G or y not in G:
        raise PreconditionError("x and y must be vertices of G")
    eps = Fraction(epsilon)
    rng = random.Random(seed)
    best = None
    for _ in range(max_retries):
        sides = []
        for a, size in enumerate(G.part_sizes):
            s = [rng.getrandbits(1) for _ in range(size)]
            s[x[a]] = 0
            s[y[a]] = 1
            sides.append(tuple(s))
        block_ok, cell_ok, score = _partition_checks(G, sides, eps)
        cand = BalancedPartition(tuple(sides), eps, block_ok, cell_ok, score)
        if cand.verified:
            return cand
        if best is None or cand.score < best.score:
            best = cand
    raise PartitionFailed(f"no balanced partition in {max_retries} tries", best=best)


# -- the connector -----------------------------------------------------------


@dataclass
class _Side:
    """Reach bookkeeping for one half of the connector."""

    graph: LineGraph
    reps: list[tuple[int, sg.SigmaPath]] = field(default_factory=list)
    coords: set[int] = field(default_factory=set)
    # vertex id in the host graph -> {size: path from the side's root}
    ends: dict[int, dict[int, sg.SigmaPath]] = field(default_factory=dict)


def _path_coords(G: LineGraph, path: sg.SigmaPath) -> set[int]:
    return {G.to_global((a, e)) for v in path.vertices for a, e in enumerate(v)}


def _dense_piece(pieces, n_host: int, K, floor) -> LineGraph | None:
    best = None
    for H, _ in pieces:
        if H.n and H.n * Fraction(K) <= n_host and H.min_degree >= floor:
            if best is None or (H.min_degree, -H.n) > (best.min_degree, -best.n):
                best = H
    return best


def _cover(Gj: LineGraph, lam, eps, params: SearchParams):
    if Gj.n == 0:
        return []
    return expander_cover(Gj, ExpanderParams(lam, None, eps), params.exact_threshold, params.max_seeds)


def _representatives(host: LineGraph, root: Vertex, sigma, pieces, cap, params):
    """Reach from ``root`` in ``host``; pick the lowest reached vertex in each piece."""
    tree = sg.ReachTree(host, host.index(root), sigma, cap, sg.AT_MOST, params.patience)
    V = host.vertices()
    reached = {V[v] for v in tree.first_seen}
    reps = []
    for i, (P, _) in enumerate(pieces):
        hit = [v for v in P.vertices() if v in reached]
        if hit:
            z = min(hit)
            reps.append((i, tree.path(host.index(z))))
    return reps


def _piece_paths(G: LineGraph, side: _Side, pieces, banned: set[int], sigma, cap,
                 exact: bool, params: SearchParams):
    """Extend every representative inside its cleaned piece; record endpoints by size."""
    for i, lead in side.reps:
        P = pieces[i][0]
        keep = banned - _path_coords(G, sg.SigmaPath(lead.sigma, (lead.end,)))
        Hp = P.without_global(keep)
        if lead.end not in Hp:
            continue
        tree = sg.ReachTree(Hp, Hp.index(lead.end), sigma, cap,
                            sg.EXACTLY if exact else sg.AT_MOST,
                            None if exact else params.patience)
        for layer_no, layer in enumerate(tree.layers):
            for v in layer:
                if not exact and tree.first_seen[v] != layer_no:
                    continue
                inner = tree.path(v, layer_no)
                full = lead + inner
                size = full.size
                gid = G.index(full.end)
                side.ends.setdefault(gid, {}).setdefault(size, full)


def connect(G: LineGraph, x: Sequence[int], y: Sequence[int], sigma: Sequence[int],
            params: SearchParams, *, d: int | None = None, exact_size: int | None = None,
            seed: int | None = None) -> SearchOutcome:
    """Look for a σ-path from x to y, or a small subgraph of high minimum degree.

    Splits the parts in two around x and y, covers both corner cells with
    expanders, grows σ-paths from x and τ-paths from y through coordinate-
    disjoint regions and looks for a σ-edge joining the two grown sets. With
    ``exact_size`` only paths of exactly that many vertices are accepted.
    A found path is always preferred to a dense piece.
    """
    x, y = tuple(x), tuple(y)
    r, n = G.r, G.n
    sigma = sg.check_permutation(sigma, r)
    tau = sg.reverse(sigma)
    if x not in G or y not in G:
        raise PreconditionError("x and y must be vertices of G")
    if any(a == b for a, b in zip(x, y)):
        raise PreconditionError("x and y share a coordinate")
    if exact_size is not None and exact_size < 2:
        raise PreconditionError("a path from x to y has at least 2 vertices")
    eps = params.eps_for(r)
    lam = params.lam_for(n)
    d = G.min_degree if d is None else d
    floor = params.c4_for(r) * d
    seed = params.seed if seed is None else seed
    cap = exact_size if exact_size is not None else (params.max_path_size or n)

    try:
        part = balanced_partition(G, x, y, eps, seed, params.partition_retries)
    except PartitionFailed as exc:
        if params.strict_partition or exc.best is None:
            return _failure(Stage.PARTITION)
        part = exc.best
    G1 = part.cell(G, (0,) * r)
    G2 = part.cell(G, (1,) * r)
    try:
        cover1 = _cover(G1, lam, eps, params)
        cover2 = _cover(G2, lam, eps, params)
    except (ExpansionFailed, PreconditionError):
        return _failure(Stage.COVER)
    dense = _dense_piece(cover1 + cover2, n, params.K, floor)

    def fallback(stage: Stage) -> SearchOutcome:
        if dense is not None:
            return SearchOutcome(Kind.DENSE, subgraph=dense, min_degree=dense.min_degree,
                                 size=dense.n, d_floor=d, required_min_degree=floor,
                                 detail={"balanced": part.verified, "missed": stage.value})
        return _failure(stage, balanced=part.verified)

    Yg = set(G.global_coordinates(G.index(y)))
    G_x = G.without_global(Yg)
    left = _Side(G_x)
    left.reps = _representatives(G_x, x, sigma, cover1, cap, params)
    if not left.reps:
        return fallback(Stage.REACH_X)
    for _, p in left.reps:
        left.coords |= _path_coords(G, p)

    G_y = G.without_global(left.coords)
    right = _Side(G_y)
    right.reps = _representatives(G_y, y, tau, cover2, cap, params)
    if not right.reps:
        return fallback(Stage.REACH_Y)
    for _, p in right.reps:
        right.coords |= _path_coords(G, p)

    banned = left.coords | right.coords
    exact = exact_size is not None
    _piece_paths(G, left, cover1, banned, sigma, cap, exact, params)
    _piece_paths(G, right, cover2, banned, tau, cap, exact, params)

    path = _meet(G, left, right, sigma, exact_size)
    if path is None:
        return fallback(Stage.MEET)
    if not (sg.validate_sigma_path(G, path) and path.start == x and path.end == y):
        raise RuntimeError("connector assembled an invalid σ-path")
    return SearchOutcome(Kind.PATH, path=path, detail={"balanced": part.verified})


def _meet(G: LineGraph, left: _Side, right: _Side, sigma, exact_size) -> sg.SigmaPath | None:
    """Scan left endpoints by size; join the first one with a σ-neighbour on the right."""
    order = sorted(left.ends, key=lambda v: (min(left.ends[v]), v))
    for z in order:
        ys, _ = sg._expand(G, [z], None, sigma)
        best = None
        for zp in ys.tolist():
            sizes = right.ends.get(zp)
            if not sizes:
                continue
            for a, pa in sorted(left.ends[z].items()):
                for b, pb in sorted(sizes.items()):
                    if exact_size is not None and a + b != exact_size:
                        continue
                    key = (a + b, zp)
                    if best is None or key < best[0]:
                        best = (key, pa, pb)
        if best is not None:
            _, pa, pb = best
            return sg.SigmaPath(pa.sigma, pa.vertices + pb.reversed().vertices)
    return None


# -- cycles ------------------------------------------------------------------


def _candidate_pairs(H: LineGraph, limit: int, rng: random.Random) -> list[tuple[Vertex, Vertex]]:
    """Coordinate-disjoint pairs: scan order first, then random sampling."""
    pairs = []
    V = H.vertices()
    for xi in range(min(H.n, 64)):
        disjoint = np.flatnonzero((H.coords != H.coords[xi]).all(axis=1))
        if disjoint.size:
            pairs.append((V[xi], V[int(disjoint[0])]))
            if len(pairs) >= limit:
                return pairs
    if pairs or H.n < 2:
        return pairs
    for _ in range(1000):
        i, j = rng.randrange(H.n), rng.randrange(H.n)
        if all(a != b for a, b in zip(V[i], V[j])):
            return [(V[i], V[j])]
    return pairs


def splice(G: LineGraph, P: sg.SigmaPath, Q: sg.SigmaPath) -> tuple[tuple[Vertex, ...], tuple[int, ...]]:
    """Join a σ-path x..y with a σ-path y..x into a cyclic vertex list and its id sequence."""
    if P.end != Q.start or Q.end != P.start or P.sigma != Q.sigma:
        raise ValueError("paths do not close up")
    verts = P.vertices + Q.vertices[1:-1]
    seq = tuple(G.coordinate_name(a, v[a]) for v in verts for a in P.sigma)
    return verts, seq


def _host_hypergraph(G: LineGraph):
    H = getattr(G, "_host_hg", None)
    if H is None:
        H = G.to_hypergraph()
        G._host_hg = H
    return H


def _emit_cycle(G: LineGraph, P, Q) -> SearchOutcome:
    verts, seq = splice(G, P, Q)
    if not validate_tight_cycle(_host_hypergraph(G), seq):
        raise RuntimeError("spliced sequence is not a tight cycle")
    return SearchOutcome(Kind.CYCLE, cycle=seq, cycle_vertices=verts,
                         detail={"sizes": (P.size, Q.size)})


def _expander_for(G: LineGraph, params: SearchParams):
    d = Fraction(params.d) if params.d is not None else G.density
    lam = params.lam_for(G.n)
    return extract_expander(G, ExpanderParams(lam, d, params.eps_for(G.r)),
                            params.exact_threshold, params.max_seeds)


def _close(G, H, x, y, sigma, params, sizes, seed_base) -> tuple[SearchOutcome, SearchOutcome | None]:
    k1, k2 = sizes
    out = connect(H, x, y, sigma, params, d=H.min_degree, exact_size=k1, seed=seed_base)
    if out.kind is not Kind.PATH:
        return out, None
    P = out.path
    inner = {H.to_global((a, e)) for v in P.vertices[1:-1] for a, e in enumerate(v)}
    H2 = H.without_global(inner)
    back = connect(H2, y, x, sigma, params, d=H2.min_degree, exact_size=k2, seed=seed_base + 1)
    if back.kind is Kind.PATH:
        return _emit_cycle(G, P, back.path), None
    if back.kind is Kind.FAILURE:
        back = replace(back, stage=Stage.RETURN)
    return back, out


def _search(G: LineGraph, params: SearchParams, sigma, splits: list[tuple]) -> SearchOutcome:
    if G.n == 0:
        return _failure(Stage.EMPTY)
    sigma = sg.check_permutation(sigma if sigma is not None else range(G.r), G.r)
    try:
        H, cert = _expander_for(G, params)
    except (ExpansionFailed, PreconditionError):
        return _failure(Stage.EXPANDER)
    rng = random.Random(f"pairs:{params.seed}")
    pairs = _candidate_pairs(H, params.pair_attempts, rng)
    if not pairs:
        return _failure(Stage.PAIR, expander_n=H.n)
    dense = None
    last = Stage.MEET
    for t, (x, y) in enumerate(pairs):
        for s, sizes in enumerate(splits):
            seed_base = params.seed * 1_000_003 + 2 * (t * len(splits) + s)
            out, _ = _close(G, H, x, y, sigma, params, sizes, seed_base)
            if out.kind is Kind.CYCLE:
                out.detail.update(expander_n=H.n, mode=cert.mode)
                return out
            if out.kind is Kind.DENSE and dense is None:
                dense = out
            if out.kind is Kind.FAILURE:
                last = out.stage
    if dense is not None:
        dense.detail.update(expander_n=H.n, mode=cert.mode)
        return dense
    return _failure(last, expander_n=H.n)


def assemble_cycle(G: LineGraph, params: SearchParams, sigma: Sequence[int] | None = None) -> SearchOutcome:
    """Tight cycle from two σ-paths x→y and y→x in an extracted expander.

    The second path lives in the expander minus the interior coordinates of
    the first, so the splice has distinct coordinates. Returns a validated
    Cycle, a DenseSubgraph from either connector call, or a Failure.
    """
    return _search(G, params, sigma, [(None, None)])


def find_cycle_of_length(G: LineGraph, L: int, params: SearchParams,
                         sigma: Sequence[int] | None = None) -> SearchOutcome:
    """As ``assemble_cycle`` but the cycle has exactly L coordinates (r | L, L >= 2r)."""
    r = G.r
    if L % r or L < 2 * r:
        raise PreconditionError(f"L={L} must be a multiple of r={r} and at least {2 * r}")
    total = L // r + 2
    first = (total + 1) // 2
    ks = sorted(range(2, total - 1), key=lambda k: (abs(k - first), k))
    out = _search(G, params, sigma, [(k, total - k) for k in ks])
    if out.kind is Kind.CYCLE and len(out.cycle) != L:
        raise RuntimeError("cycle length does not match the request")
    return out


def density_increment_search(G: LineGraph, params: SearchParams,
                             sigma: Sequence[int] | None = None) -> SearchOutcome:
    """Repeat ``assemble_cycle``, descending into each dense piece it returns.

    Stops with a Cycle, or with a Failure once the graph is empty, has fewer
    vertices than its density, or the depth limit is hit. The chain of
    visited graphs is returned either way.
    """
    chain: list[ChainStep] = []
    current = G
    level_params = params
    for depth in range(params.max_depth + 1):
        step = ChainStep(current.n, current.p, current.density, current.min_degree)
        if current.n == 0:
            chain.append(step)
            return SearchOutcome(Kind.FAILURE, stage=Stage.EMPTY, chain=chain)
        if current.n < current.density:
            chain.append(step)
            return SearchOutcome(Kind.FAILURE, stage=Stage.TERMINAL, chain=chain)
        if depth == params.max_depth:
            chain.append(step)
            return SearchOutcome(Kind.FAILURE, stage=Stage.DEPTH, chain=chain)
        out = assemble_cycle(current, level_params, sigma)
        if out.kind is not Kind.DENSE:
            chain.append(step)
            out.chain = chain
            return out
        S = out.subgraph
        if S.n * Fraction(params.K) > current.n or S.min_degree < out.required_min_degree:
            raise RuntimeError("dense piece does not meet its certificate")
        chain.append(replace(step, d_floor=out.d_floor, required_min_degree=out.required_min_degree))
        current = S
        level_params = replace(params, d=None, seed=params.seed + depth + 1)
    raise AssertionError("unreachable")
