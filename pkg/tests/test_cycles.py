import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightcycle.cycles import (
    Kind,
    SearchParams,
    Stage,
    assemble_cycle,
    balanced_partition,
    connect,
    default_lambda,
    density_increment_search,
    find_cycle_of_length,
    proof_constants,
    splice,
)
from tightcycle.errors import PartitionFailed, PreconditionError
from tightcycle.generators import gen_complete_multipartite, gen_full_grid, gen_random_rpartite, gen_star
from tightcycle.hypergraph import make_r_partite
from tightcycle.linegraph import LineGraph, from_hypergraph
from tightcycle.oracle import brute_force_tight_cycle, validate_tight_cycle
from tightcycle.sigma import validate_sigma_path

HALF = Fraction(1, 2)


def disjoint_grids(m, r, copies):
    cells = [tuple(c * m + e for e in t) for c in range(copies)
             for t in itertools.product(range(m), repeat=r)]
    return LineGraph(r, [m * copies] * r, cells)


def test_constants_are_exact():
    c = proof_constants(3)
    assert c["epsilon"] == Fraction(1, 512)
    assert c["c4"] == c["epsilon"] / 18


@pytest.mark.parametrize("n", [2, 3, 16, 1000, 5000])
def test_default_lambda_stays_below_bound(n):
    import math

    assert 0 < default_lambda(n) <= 1 / (2 * math.log2(n))


def test_params_validation():
    with pytest.raises(ValueError):
        SearchParams(K=1)
    with pytest.raises(ValueError):
        SearchParams(lam=0)


# -- partitions --------------------------------------------------------------


def test_partition_on_big_grid():
    G = from_hypergraph(gen_full_grid(20, 3))
    part = balanced_partition(G, (0, 0, 0), (1, 1, 1), HALF)
    assert part.verified
    assert all(s[0] == 0 and s[1] == 1 for s in part.sides)
    assert part.cell(G, (0, 0, 0)).n > 0 and (0, 0, 0) in part.cell(G, (0, 0, 0))


def test_block_of_three_cannot_balance():
    G = LineGraph(2, [3, 2], [(0, 0), (1, 0), (2, 0), (1, 1)])
    with pytest.raises(PartitionFailed) as info:
        balanced_partition(G, (0, 0), (1, 1), HALF, max_retries=8)
    assert info.value.best is not None and not info.value.best.block_ok


def test_partition_rejects_shared_coordinate():
    G = from_hypergraph(gen_full_grid(3, 2))
    with pytest.raises(PreconditionError):
        balanced_partition(G, (0, 0), (0, 1), HALF)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_partition_balance_is_real(seed):
    G = from_hypergraph(gen_full_grid(12, 2))
    try:
        part = balanced_partition(G, (0, 0), (1, 1), HALF, seed=seed, max_retries=256)
    except PartitionFailed:
        return
    bits = part.side_bits(G)
    for a in range(2):
        for block in G.blocks(a):
            ones = sum(part.sides[a][G.coords[v, a]] for v in block.tolist())
            assert abs(2 * ones - len(block)) * 4 <= HALF * len(block)
    for code in range(4):
        assert abs(int((bits == code).sum()) * 4 - G.n) <= HALF * G.n


# -- connector ---------------------------------------------------------------


def test_connect_on_grid():
    G = from_hypergraph(gen_full_grid(12, 3))
    out = connect(G, (0, 0, 0), (1, 1, 1), (0, 1, 2), SearchParams(epsilon=HALF))
    assert out.kind is Kind.PATH
    assert validate_sigma_path(G, out.path)
    assert (out.path.start, out.path.end) == ((0, 0, 0), (1, 1, 1))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_connect_exact_size(k):
    G = from_hypergraph(gen_full_grid(12, 3))
    out = connect(G, (0, 0, 0), (1, 1, 1), (2, 0, 1), SearchParams(epsilon=HALF), exact_size=k)
    assert out.kind is Kind.PATH and out.path.size == k and validate_sigma_path(G, out.path)


def test_connect_across_components_gives_dense_piece():
    G = disjoint_grids(2, 3, 4)
    params = SearchParams(epsilon=HALF)
    out = connect(G, (0, 0, 0), (2, 2, 2), (0, 1, 2), params)
    assert out.kind is Kind.DENSE
    assert out.size * params.K <= G.n
    assert out.min_degree >= out.required_min_degree


def test_connect_strict_partition_fails():
    G = LineGraph(2, [3, 2], [(0, 0), (1, 0), (2, 0), (1, 1)])
    out = connect(G, (0, 0), (1, 1), (0, 1), SearchParams(epsilon=HALF, strict_partition=True))
    assert out.kind is Kind.FAILURE and out.stage is Stage.PARTITION


def test_splice_needs_closing_paths():
    G = from_hypergraph(gen_full_grid(12, 3))
    p = connect(G, (0, 0, 0), (1, 1, 1), (0, 1, 2), SearchParams(epsilon=HALF)).path
    with pytest.raises(ValueError):
        splice(G, p, p)


# -- cycles ------------------------------------------------------------------


def test_k222_cycle_of_length_six():
    H = gen_complete_multipartite([2, 2, 2])
    out = assemble_cycle(from_hypergraph(H), SearchParams())
    assert out.kind is Kind.CYCLE and out.length == 6
    assert validate_tight_cycle(H, out.cycle)


@pytest.mark.parametrize("n", range(4, 11))
def test_star_never_yields_a_cycle(n):
    G = from_hypergraph(make_r_partite(gen_star(n, 3), seed=n))
    for seed in range(3):
        assert density_increment_search(G, SearchParams(seed=seed)).kind is not Kind.CYCLE


def test_length_must_be_multiple_of_r():
    G = from_hypergraph(gen_full_grid(10, 3))
    for L in (4, 3, 7):
        with pytest.raises(PreconditionError):
            find_cycle_of_length(G, L, SearchParams())


@pytest.mark.parametrize("L", [6, 9, 12, 15])
def test_grid_cycles_of_given_length(L):
    H = gen_full_grid(10, 3)
    out = find_cycle_of_length(from_hypergraph(H), L, SearchParams(epsilon=HALF))
    assert out.kind is Kind.CYCLE and out.length == L
    assert validate_tight_cycle(H, out.cycle)


def test_empty_graph():
    G = LineGraph(3, [2, 2, 2], [])
    assert assemble_cycle(G, SearchParams()).stage is Stage.EMPTY
    out = density_increment_search(G, SearchParams())
    assert out.kind is Kind.FAILURE and out.stage is Stage.EMPTY and len(out.chain) == 1


@pytest.mark.parametrize("seed", range(40))
def test_search_outcomes_are_sound(seed):
    m, r, p = [(4, 3, 0.4), (6, 2, 0.3), (3, 4, 0.5), (5, 3, 0.25)][seed % 4]
    H = gen_random_rpartite(m, r, p, seed)
    out = density_increment_search(from_hypergraph(H), SearchParams(seed=seed))
    if out.kind is Kind.CYCLE:
        assert validate_tight_cycle(H, out.cycle)
    else:
        assert out.kind is Kind.FAILURE
    K = SearchParams().K
    for a, b in zip(out.chain, out.chain[1:]):
        assert b.n * K <= a.n
        assert b.delta >= a.required_min_degree


@pytest.mark.parametrize("seed", range(40))
def test_no_cycle_when_oracle_finds_none(seed):
    H = gen_random_rpartite(3, 3, 0.35, seed)
    truth = brute_force_tight_cycle(H, max_vertices=9)
    out = assemble_cycle(from_hypergraph(H), SearchParams(seed=seed))
    if truth is None:
        assert out.kind is not Kind.CYCLE
    if out.kind is Kind.CYCLE:
        assert truth is not None and validate_tight_cycle(H, out.cycle)


def test_depth_limit():
    G = from_hypergraph(gen_random_rpartite(6, 2, 0.3, 1))
    out = density_increment_search(G, SearchParams(seed=1, max_depth=1))
    assert out.kind is Kind.FAILURE and out.stage is Stage.DEPTH and len(out.chain) == 2
