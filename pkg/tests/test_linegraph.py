from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tightcycle.generators import gen_complete_multipartite, gen_full_grid
from tightcycle.hypergraph import Hypergraph
from tightcycle.linegraph import (
    LineGraph,
    delete_coordinates,
    from_hypergraph,
    induced,
    neighborhood,
    neighborhoods,
    stats,
    to_hypergraph,
)

from conftest import line_graphs, nonempty_line_graphs


def differ_on(x, y):
    return [a for a in range(len(x)) if x[a] != y[a]]


def brute_boundary(G, X, axis):
    return {y for y in G.vertices() for x in X if differ_on(x, y) == [axis]}


def test_single_edge():
    G = from_hypergraph(gen_complete_multipartite([1, 1, 1]))
    s = stats(G)
    assert (s.num_vertices, s.num_blocks, s.density, s.min_degree) == (1, 3, 1, 1)


def test_k222():
    G = from_hypergraph(gen_complete_multipartite([2, 2, 2]))
    assert (G.n, G.p, G.density, G.min_degree) == (8, 12, 2, 2)


def test_full_grid_counts():
    G = from_hypergraph(gen_full_grid(3, 3))
    assert (G.n, G.p, G.density, G.min_degree) == (27, 27, 3, 3)


def test_unlabelled_hypergraph_rejected():
    with pytest.raises(ValueError):
        from_hypergraph(Hypergraph(3, 3, ((0, 1, 2),)))


def test_empty_graph_density_zero():
    G = LineGraph(3, [2, 2, 2], [])
    assert G.density == 0 and G.min_degree == 0 and G.p == 0


def test_coordinate_out_of_range():
    with pytest.raises(ValueError):
        LineGraph(2, [2, 2], [(0, 2)])


def test_full_block_has_empty_neighbourhood_on_its_axis():
    G = from_hypergraph(gen_full_grid(3, 3))
    B = [v for v in G.vertices() if v[1:] == (0, 0)]
    boundary, nbhd = neighborhoods(G, B, 0)
    assert boundary == set(B) and nbhd == set()


def test_single_vertex_neighbourhood_in_grid():
    G = from_hypergraph(gen_full_grid(3, 3))
    assert len(neighborhood(G, [(0, 0, 0)])) == 6


def test_empty_set_neighbourhoods():
    G = from_hypergraph(gen_full_grid(2, 2))
    assert neighborhoods(G, [], 0) == (set(), set())
    assert neighborhood(G, []) == set()


def test_delete_one_slice():
    G = from_hypergraph(gen_full_grid(3, 3))
    assert delete_coordinates(G, []) is G
    assert delete_coordinates(G, [(0, 1)]).n == 18


@pytest.mark.parametrize("r, b", [(2, 3), (3, 4), (4, 2)])
def test_single_block_density(r, b):
    sizes = [b] + [1] * (r - 1)
    G = LineGraph(r, sizes, [(i,) + (0,) * (r - 1) for i in range(b)])
    assert G.p == b * (r - 1) + 1
    assert G.density == Fraction(r * b, b * (r - 1) + 1)


def test_induced_identity_and_empty():
    G = from_hypergraph(gen_full_grid(2, 3))
    assert induced(G, G.vertices()) == G
    assert induced(G, []).n == 0


@given(line_graphs())
def test_blocks_partition_each_axis(G):
    for a in range(G.r):
        blocks = G.blocks(a)
        assert sum(len(b) for b in blocks) == G.n
        seen = np.concatenate(blocks) if blocks else np.zeros(0, dtype=int)
        assert sorted(seen.tolist()) == list(range(G.n))
        for b in blocks:
            rows = G.coords[b]
            assert (np.delete(rows, a, axis=1) == np.delete(rows[:1], a, axis=1)).all()


@given(line_graphs())
def test_density_is_exact_and_dominates_min_degree(G):
    assert G.density == (Fraction(G.r * G.n, G.p) if G.n else 0)
    assert G.density >= G.min_degree


@given(line_graphs())
def test_round_trip(G):
    H = to_hypergraph(G)
    back = from_hypergraph(H)
    assert back == G
    assert to_hypergraph(back) == H


@given(nonempty_line_graphs(max_vertices=25), st.data())
def test_neighborhoods_match_definition(G, data):
    V = G.vertices()
    X = data.draw(st.sets(st.sampled_from(V), max_size=6))
    for a in range(G.r):
        boundary, nbhd = neighborhoods(G, X, a)
        assert boundary == brute_boundary(G, X, a)
        assert nbhd == boundary - set(X)
    full = {y for y in V if y not in X and any(len(differ_on(x, y)) == 1 for x in X)}
    assert neighborhood(G, X) == full


@given(nonempty_line_graphs(max_vertices=30), st.data())
def test_deletion_count_bounds(G, data):
    coords = sorted({(a, v[a]) for v in G.vertices() for a in range(G.r)})
    U = data.draw(st.sets(st.sampled_from(coords), max_size=3))
    D = delete_coordinates(G, U)
    assert all(all(v[a] != e for a, e in U) for v in D.vertices())
    assert D.n == sum(1 for v in G.vertices() if all(v[a] != e for a, e in U))
    delta, u = G.min_degree, len(U)
    if D.n:
        assert D.min_degree >= delta - u
    assert D.n * delta >= (delta - u) * G.n
