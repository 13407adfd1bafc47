import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from width2lab.graph import (
    Graph, GraphError, MinorOp, apply_minor_op, blocks, canonical_form, contract,
    is_isomorphic, one_step_minors,
)
from width2lab.generators import make_obstruction, make_sc, make_sun
from width2lab.io import ParseError, format_edge_list, from_graph6, parse_edge_list, read_graphs, to_dot, to_graph6
from conftest import graphs


def test_path_blocks():
    bt = blocks(Graph(range(3), [(0, 1), (1, 2)]))
    assert sorted(map(sorted, bt.blocks)) == [[0, 1], [1, 2]]
    assert bt.cut_vertices == {1}


def test_d3_is_one_block():
    bt = blocks(make_obstruction("D3"))
    assert len(bt.blocks) == 1 and not bt.cut_vertices


def test_bowtie_blocks():
    bt = blocks(Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]))
    assert len(bt.blocks) == 2 and bt.cut_vertices == {2}


@given(graphs(max_n=9))
def test_blocks_match_networkx(g):
    bt = blocks(g)
    nxg = nx.Graph(list(g.edges))
    nxg.add_nodes_from(g.vertices)
    ours = sorted(sorted(b) for b in bt.blocks if len(b) > 1)
    theirs = sorted(sorted(c) for c in nx.biconnected_components(nxg))
    assert ours == theirs
    assert set(bt.cut_vertices) == set(nx.articulation_points(nxg))
    # edges are partitioned among blocks
    for u, v in g.edges:
        assert sum(1 for b in bt.blocks if u in b and v in b) == 1


@given(graphs(max_n=8, connected=True))
def test_non_cut_vertex_deletion_keeps_connected(g):
    cuts = blocks(g).cut_vertices
    for v in g.vertices:
        if v not in cuts and g.n > 1:
            assert g.without_vertices([v]).is_connected()


def test_contract_triangle_edge():
    g = contract(Graph(range(3), [(0, 1), (1, 2), (0, 2)]), 0, 1)
    assert g.n == 2 and g.m == 1


def test_delete_rim_vertex_of_sun():
    g = make_sun(3)
    rim = [v for v in g.vertices if g.degree(v) == 2][0]
    h = apply_minor_op(g, MinorOp("delete-vertex", rim))
    assert (h.n, h.m) == (5, 7)


def test_contract_sc4_w1w4():
    h = contract(make_sc(4), 0, 3)
    assert h.n == 9


def test_missing_target_errors():
    with pytest.raises(GraphError):
        apply_minor_op(Graph(range(2), [(0, 1)]), MinorOp("delete-vertex", 7))


def test_contraction_survivor_name():
    g = Graph(range(3), [(0, 1), (1, 2)])
    assert 2 in contract(g, 1, 2, keep=2).vertices


@given(graphs(max_n=7))
def test_one_step_minors_stay_simple(g):
    for _, m in one_step_minors(g):
        for u, v in m.edges:
            assert u != v
        assert m.n + m.m < g.n + g.m


def test_isomorphism_examples():
    c4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    c4b = Graph(range(4), [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert is_isomorphic(c4, c4b)
    k4 = Graph(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert not is_isomorphic(k4, c4)
    # 3-sun built cycle-first: hexagon 0..5 with chords among even positions
    cyc = Graph(range(6), [(i, (i + 1) % 6) for i in range(6)] + [(0, 2), (2, 4), (4, 0)])
    assert is_isomorphic(cyc, make_sun(3))


@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_canonical_form_invariant(g, r):
    perm = list(g.vertices)
    r.shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    assert canonical_form(g) == canonical_form(h)


def test_canonical_form_refuses_large():
    with pytest.raises(GraphError):
        canonical_form(Graph(range(40)))


@given(graphs(max_n=12))
def test_graph6_roundtrip_and_networkx(g):
    s = to_graph6(g)
    assert from_graph6(s) == g
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    assert nx.to_graph6_bytes(nxg, header=False).decode().strip() == s


def test_graph6_large_n_matches_networkx():
    rnd = random.Random(3)
    g = Graph(range(70), [(a, b) for a in range(70) for b in range(a + 1, 70) if rnd.random() < 0.05])
    nxg = nx.Graph()
    nxg.add_nodes_from(range(70))
    nxg.add_edges_from(g.edges)
    assert nx.to_graph6_bytes(nxg, header=False).decode().strip() == to_graph6(g)


def test_edge_list_roundtrip():
    g = make_obstruction("S3")
    assert parse_edge_list(format_edge_list(g)) == g


@pytest.mark.parametrize("text, where", [
    ("3 1\n0 3\n", ":2:"),
    ("3 1\n1 1\n", ":2:"),
    ("3 2\n0 1\n1 0\n", ":3:"),
    ("3 x\n", ":1:"),
    ("3 2\n0 1\n", "declares 2 edges"),
])
def test_edge_list_errors_are_positioned(text, where):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text, "f.txt")
    assert where in str(exc.value)


def test_read_graphs_detects_graph6():
    gs = read_graphs("Bw\nCF\n")
    assert [g.n for g in gs] == [3, 4]


def test_dot_export():
    out = to_dot(Graph(range(2), [(0, 1)]))
    assert out.startswith("graph") and "0 -- 1" in out
