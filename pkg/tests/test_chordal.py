import itertools
import random

import pytest
from hypothesis import given, strategies as st

from width2lab.chordal import (
    EliminationOrdering, clique_number, clique_number_chordal, is_chordal, is_perfect_elimination, is_simple_elimination,
    is_strongly_chordal,
)
from width2lab.generators import make_obstruction, make_sc, make_sun
from width2lab.graph import Graph, GraphError, is_isomorphic
from width2lab.oracles import all_graphs, chordless_cycles_enum
from conftest import graphs

C4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
K4 = make_obstruction("K4")
S3 = make_obstruction("S3")
SUNS = [make_sun(3), make_sun(4)]


def _has_induced_sun(g):
    for sun in SUNS:
        if sun.n > g.n:
            continue
        for sub in itertools.combinations(g.vertices, sun.n):
            h = g.subgraph(sub)
            if h.m == sun.m and is_isomorphic(h, sun):
                return True
    return False


def test_chordal_examples():
    assert is_chordal(C4) is None
    assert is_chordal(K4) is not None
    peo = is_chordal(S3)
    assert peo is not None and is_perfect_elimination(S3, peo.order)


def test_strongly_chordal_examples():
    assert is_strongly_chordal(S3) is None
    tree = Graph(range(6), [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)])
    assert is_strongly_chordal(tree) is not None
    sc5 = make_sc(5)
    o = is_strongly_chordal(sc5)
    assert o is not None and is_simple_elimination(sc5, o.order)


def test_clique_numbers():
    assert clique_number_chordal(K4, is_chordal(K4)) == 4
    assert clique_number_chordal(S3, is_chordal(S3)) == 3
    sc5 = make_sc(5)
    assert clique_number_chordal(sc5, is_chordal(sc5)) == 5
    assert clique_number(C4) is None


def test_clique_number_rejects_bad_ordering():
    # C4 has no perfect elimination ordering at all
    with pytest.raises(GraphError):
        clique_number_chordal(C4, EliminationOrdering((0, 1, 2, 3)))


@pytest.mark.parametrize("n", range(1, 8))
def test_chordal_matches_cycle_enumeration(n):
    for g in all_graphs(n):
        has_long = any(len(c) >= 4 for c in chordless_cycles_enum(g))
        assert (is_chordal(g) is not None) == (not has_long)


@pytest.mark.parametrize("n", range(1, 8))
def test_strongly_chordal_matches_sun_oracle(n):
    for g in all_graphs(n):
        if is_chordal(g) is None:
            assert is_strongly_chordal(g) is None
            continue
        assert (is_strongly_chordal(g) is not None) == (not _has_induced_sun(g))


def test_strongly_chordal_matches_sun_oracle_sampled_n8():
    rnd = random.Random(8)
    seen = 0
    while seen < 150:
        g = Graph(range(8), [(a, b) for a in range(8) for b in range(a + 1, 8) if rnd.random() < 0.55])
        if is_chordal(g) is None:
            continue
        seen += 1
        assert (is_strongly_chordal(g) is not None) == (not _has_induced_sun(g))


@given(graphs(max_n=8), st.integers(0, 10**6))
def test_simple_elimination_is_order_independent(g, seed):
    a = is_strongly_chordal(g)
    b = is_strongly_chordal(g, rng=random.Random(seed))
    assert (a is None) == (b is None)
    if b is not None:
        assert is_simple_elimination(g, b.order)
        assert is_chordal(g) is not None
