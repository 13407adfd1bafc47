import random

import pytest
from hypothesis import given, strategies as st

from width2lab.generators import make_obstruction, random_mamba, subdivide
from width2lab.graph import Graph, GraphError
from width2lab.minors import (
    ALL_IDS, MinorModel, ROOT, has_minor, has_rooted_minor, obstruction_graph, verify_model,
)
from width2lab.oracles import all_graphs, minor_oracle
from width2lab.recognize import is_head_vertex
from conftest import graphs

K4 = obstruction_graph("K4")
D3 = obstruction_graph("D3")
S3 = obstruction_graph("S3")
K5 = Graph(range(5), [(a, b) for a in range(5) for b in range(a + 1, 5)])
C4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_subdivided_d3_has_d3():
    host = subdivide(D3, {e: 1 for e in D3.edges})
    m = has_minor(host, D3)
    assert m is not None and verify_model(host, D3, m)[0]


def test_negative_examples():
    assert has_minor(C4, K4) is None
    assert has_minor(S3, K4) is None


def test_k4_in_k5_and_overlap_rejected():
    m = MinorModel({i: frozenset([i]) for i in range(4)},
                   {(a, b): (a, b) for a in range(4) for b in range(a + 1, 4)})
    assert verify_model(K5, K4, m)[0]
    bad = MinorModel({**m.branch_sets, 1: frozenset([0, 1])}, m.edge_witnesses)
    ok, problems = verify_model(K5, K4, bad)
    assert not ok and problems


def test_disconnected_branch_set_rejected():
    p = Graph(range(2), [(0, 1)])
    host = Graph(range(3), [(0, 1), (1, 2)])
    m = MinorModel({0: frozenset([0, 2]), 1: frozenset([1])}, {(0, 1): (0, 1)})
    assert not verify_model(host, p, m)[0]


@pytest.mark.parametrize("oid", ["H1", "H2"])
def test_rooted_identity(oid):
    h = obstruction_graph(oid)
    m = has_rooted_minor(h, ROOT, h, ROOT)
    assert m is not None and ROOT in m.branch_sets[ROOT]
    assert verify_model(h, h, m, (ROOT, ROOT))[0]


def test_head_vertices_have_no_rooted_obstruction():
    rng = random.Random(5)
    for _ in range(15):
        b = random_mamba(rng, cells=3, max_cell_len=4)
        if b.n > 10:
            continue
        for z in b.vertices:
            if is_head_vertex(b, z):
                for oid in ("H1", "H2"):
                    assert has_rooted_minor(b, z, obstruction_graph(oid), ROOT) is None


def test_apex_over_big_base_gives_h2():
    # triangle 0 1 2 with apex 2 on base 01; both sides of the base are big
    g = Graph(range(8), [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (4, 1), (3, 4),
                         (0, 5), (5, 6), (6, 7), (7, 1)])
    m = has_rooted_minor(g, 2, obstruction_graph("H2"), ROOT)
    assert m is not None


@pytest.mark.parametrize("n", range(4, 8))
def test_has_minor_matches_operation_oracle(n):
    pats = [K4, D3, S3]
    for g in all_graphs(n, connected=True):
        for p in pats:
            if p.n <= g.n:
                assert (has_minor(g, p) is not None) == minor_oracle(g, p)


def test_has_minor_matches_operation_oracle_sampled_n8():
    rnd = random.Random(88)
    for _ in range(30):
        g = Graph(range(8), [(a, b) for a in range(8) for b in range(a + 1, 8) if rnd.random() < 0.35])
        for p in (K4, D3, S3):
            assert (has_minor(g, p) is not None) == minor_oracle(g, p)


@given(graphs(max_n=8, connected=True), st.integers(0, 10**6))
def test_models_verify_and_monotone(g, seed):
    rnd = random.Random(seed)
    for p in (K4, D3):
        m = has_minor(g, p)
        if m is None:
            continue
        assert verify_model(g, p, m)[0]
        missing = g.complement_edges()
        if missing:
            assert has_minor(g.with_edges([rnd.choice(missing)]), p) is not None


@given(graphs(min_n=1, max_n=8, connected=True), st.data())
def test_rooted_implies_unrooted(g, data):
    z = data.draw(st.sampled_from(g.vertices))
    for oid in ("H1", "H2"):
        h = obstruction_graph(oid)
        m = has_rooted_minor(g, z, h, ROOT)
        if m is not None:
            assert z in m.branch_sets[ROOT]
            assert has_minor(g, h) is not None


def test_catalog_shapes():
    sizes = {oid: (obstruction_graph(oid).n, obstruction_graph(oid).m) for oid in ALL_IDS}
    assert sizes["K3"] == (3, 3) and sizes["K4"] == (4, 6)
    assert sizes["D3"] == (8, 9) and sizes["S3"] == (6, 9)
    for oid, (a, b) in {"G1": ("H1", "H1"), "G2": ("H1", "H2"), "G3": ("H2", "H2")}.items():
        assert sizes[oid][0] == sizes[a][0] + sizes[b][0] - 1


def test_unknown_obstruction():
    with pytest.raises(GraphError):
        obstruction_graph("K7")


def test_model_json_roundtrip():
    m = has_minor(subdivide(D3, {e: 1 for e in D3.edges}), D3)
    assert MinorModel.from_json(m.to_json()) == m
