import itertools
import math
import random

import pytest

from tightcycle.errors import TooLarge
from tightcycle.generators import (
    gen_complete_multipartite,
    gen_random_rpartite,
    gen_random_uniform,
    gen_star,
    gen_tight_cycle,
    tight_cycle_order,
)
from tightcycle.hypergraph import Hypergraph
from tightcycle.oracle import brute_force_tight_cycle, validate_tight_cycle


def any_tight_cycle(H):
    """Independent check: try every sequence of distinct vertices."""
    for length in range(H.r + 1, H.n + 1):
        for w in itertools.permutations(range(H.n), length):
            if w[0] == min(w) and all(H.has_edge(w[(i + t) % length] for t in range(H.r))
                                      for i in range(length)):
                return True
    return False


def test_k4_3_has_length_four():
    H = Hypergraph(3, 4, tuple(itertools.combinations(range(4), 3)))
    w = brute_force_tight_cycle(H)
    assert len(w) == 4 and validate_tight_cycle(H, w)


@pytest.mark.parametrize("n", range(4, 11))
def test_star_has_none(n):
    H = gen_star(n, 3)
    assert H.num_edges == math.comb(n - 1, 2)
    assert brute_force_tight_cycle(H) is None


def test_k222_shortest_is_six():
    H = gen_complete_multipartite([2, 2, 2])
    w = brute_force_tight_cycle(H)
    assert len(w) == 6 and validate_tight_cycle(H, w)


@pytest.mark.parametrize("length, r", [(6, 3), (7, 3), (8, 4), (5, 2)])
def test_generated_cycle(length, r):
    H = gen_tight_cycle(length, r)
    assert H.num_edges == length
    assert validate_tight_cycle(H, tight_cycle_order(length, r))
    assert len(brute_force_tight_cycle(H)) == length


def test_max_len_caps_the_search():
    H = gen_tight_cycle(7, 3)
    assert brute_force_tight_cycle(H, max_len=6) is None


def test_cap_on_vertices():
    with pytest.raises(TooLarge):
        brute_force_tight_cycle(gen_complete_multipartite([5, 5, 5]))
    assert brute_force_tight_cycle(gen_complete_multipartite([5, 5, 5]), max_len=6, max_vertices=15)


def test_validator_cases():
    H = gen_complete_multipartite([2, 2, 2])
    assert validate_tight_cycle(H, (0, 2, 4, 1, 3, 5))
    assert not validate_tight_cycle(H, (0, 2, 4))          # too short
    assert not validate_tight_cycle(H, (0, 2, 4, 0, 2, 4))  # repeats
    assert not validate_tight_cycle(H, (0, 2, 4, 1, 5, 3))  # window 4 1 5 is not rainbow
    assert not validate_tight_cycle(H, (0, 2, 4, 1))


def test_isolated_vertices_do_not_count():
    H = Hypergraph(3, 40, ((0, 1, 2),))
    assert brute_force_tight_cycle(H) is None


def test_agrees_with_independent_enumeration():
    rng = random.Random(7)
    found = 0
    for _ in range(2000):
        H = gen_random_uniform(6, 3, rng.randint(0, 8), rng.randrange(10**9))
        w = brute_force_tight_cycle(H)
        assert (w is not None) == any_tight_cycle(H)
        if w is not None:
            found += 1
            assert validate_tight_cycle(H, w)
    assert found > 50


def test_generator_counts():
    assert gen_complete_multipartite([2, 3, 4]).num_edges == 24
    assert gen_random_rpartite(3, 3, 1.0, 0).num_edges == 27
    assert gen_random_rpartite(3, 3, 0.0, 0).num_edges == 0
    assert gen_random_rpartite(4, 3, 0.5, 11) == gen_random_rpartite(4, 3, 0.5, 11)
    assert gen_random_uniform(6, 3, 100, 0).num_edges == 20
