import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tightcycle.errors import FormatError
from tightcycle.generators import gen_complete_multipartite, gen_random_uniform
from tightcycle.hypergraph import Hypergraph, format_hypergraph, make_r_partite, parse_hypergraph

from conftest import partitioned_hypergraphs


def test_header_and_edges_serialize_exactly():
    H = gen_complete_multipartite([1, 1, 2])
    assert format_hypergraph(H) == "HG r=3 n=4 parts=1,1,2\n0 1 2\n0 1 3\n"


def test_unpartitioned_header():
    H = Hypergraph(3, 4, ((0, 1, 2), (1, 2, 3)))
    assert format_hypergraph(H).splitlines()[0] == "HG r=3 n=4 parts=none"


def test_comments_and_blank_lines_are_ignored():
    text = "# made by hand\nHG r=2 n=3 parts=none\n\n0 1  # first\n1 2\n"
    H = parse_hypergraph(text)
    assert H.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("HG r=3 n=4\n", 1),
    ("HG r=3 n=4 parts=none\n0 1\n", 2),
    ("HG r=2 n=3 parts=none\n0 1\n0 x\n", 3),
    ("HG r=2 n=3 parts=none\n0 3\n", 2),
    ("HG r=2 n=4 parts=2,2\n0 1\n", 2),
    ("HG r=2 n=4 parts=2,1\n", 1),
    ("HG r=2 n=3 parts=none\n0 1\n1 0\n", 3),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as info:
        parse_hypergraph(text)
    assert info.value.lineno == line
    assert str(info.value).startswith(f"line {line}:")


@given(partitioned_hypergraphs())
def test_serialize_parse_round_trip(H):
    text = format_hypergraph(H)
    assert parse_hypergraph(text) == H
    assert format_hypergraph(parse_hypergraph(text)) == text


def test_make_r_partite_keeps_labelled_input():
    H = gen_complete_multipartite([2, 2, 2])
    assert make_r_partite(H) is H


def test_make_r_partite_single_edge():
    H = Hypergraph(3, 3, ((0, 1, 2),))
    assert make_r_partite(H, seed=5).num_edges == 1


@given(st.integers(0, 10_000))
def test_make_r_partite_meets_expectation_bound(seed):
    H = gen_random_uniform(12, 3, 100, seed)
    out = make_r_partite(H, seed=seed, trials=8)
    assert out.num_edges >= math.ceil(6 * 100 / 27)
    assert set(out.edges) <= set(H.edges)
    assert all(len({out.labels[v] for v in e}) == 3 for e in out.edges)


def test_make_r_partite_empty():
    out = make_r_partite(Hypergraph(3, 5, ()))
    assert out.num_edges == 0 and out.labels is not None
