import random

import pytest
from hypothesis import given, strategies as st

from width2lab import decomp as dc
from width2lab.cellmodel import cell_completion, cycle_edges
from width2lab.chordal import clique_number_chordal, is_strongly_chordal
from width2lab.decomp import (
    DIRECTED, PATH, SPAGHETTI, SPECIAL, TREE, Decomposition, DecompositionError, build_directed_spaghetti,
    build_mamba_path, build_special, build_special_GT, build_spaghetti, cycle_path_bags, ladder_triangles,
    sc_decomposition, sc_triangulation, spaghetti_block, validate,
)
from width2lab.generators import (
    corpus, sample_path_of_cycles, make_gt, make_obstruction, make_spider_tree, make_tree_of_cycles, random_mamba,
)
from width2lab.graph import Graph
from width2lab.oracles import all_graphs
from width2lab.recognize import is_head_vertex, recognize_spctw2

LADDER = [TREE, SPAGHETTI, DIRECTED, SPECIAL]


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def cycle_bags(m):
    # c_1..c_m are 0..m-1; c_m is the hub
    cm = m - 1
    return [{cm, 0}] + [{cm, i, i + 1} for i in range(m - 2)]


def test_cycle_construction_all_variants():
    d = Decomposition.path(cycle_bags(6))
    for v in (TREE, PATH, SPAGHETTI, DIRECTED, SPECIAL):
        r = validate(cycle(6), d.as_variant(v))
        assert r.ok and r.width == 2, (v, r.violations)


def test_missing_hub_breaks_connectivity():
    bags = cycle_bags(6)
    bags[2] = bags[2] - {5}
    r = validate(cycle(6), Decomposition.path(bags))
    assert not r.ok and any("(T3)" in x and "vertex 5" in x for x in r.violations)


def test_special_needs_root_directed_paths():
    g = Graph(range(3), [(0, 1), (1, 2)])
    # vertex 1 sits in bags 0, 1, 2; arcs 0->1 and 2->1 make bag 1 a sink in the middle
    d = Decomposition({0: frozenset([0, 1]), 1: frozenset([1]), 2: frozenset([1, 2])},
                      [(0, 1), (1, 2)], SPECIAL, [(0, 1), (2, 1)], 1)
    assert validate(g, d, TREE).ok
    r = validate(g, d)
    assert not r.ok


def test_width_bound_reported():
    d = Decomposition.path([{0, 1, 2, 3}])
    r = validate(make_obstruction("K4"), d, max_width=2)
    assert not r.ok and r.width == 3


def test_cycle_path_bags_shape():
    bags, emap = cycle_path_bags([0, 1, 2, 3, 4])
    assert bags[0] == {4, 0} and bags[-1] == {4, 3}
    assert all(len(b) <= 3 for b in bags)


@pytest.mark.parametrize("m", [3, 4, 7])
def test_mamba_path_of_cycle_any_first(m):
    g = cycle(m)
    for v in g.vertices:
        d = build_mamba_path(g, first=v)
        assert v in d.bags[0] and validate(g, d, PATH, 2).ok


def test_mamba_path_single_edge():
    g = Graph(range(2), [(0, 1)])
    d = build_mamba_path(g, first=0)
    assert list(d.bags.values()) == [frozenset([0, 1])]


def test_mamba_path_sample():
    g = sample_path_of_cycles()
    d = build_mamba_path(g)
    assert validate(g, d, PATH, 2).ok


def test_mamba_path_rejects_non_mamba_and_non_head():
    with pytest.raises(DecompositionError):
        build_mamba_path(make_obstruction("S3"))
    h2 = make_obstruction("H2")
    with pytest.raises(DecompositionError):
        build_mamba_path(h2, first=0)


def test_mamba_path_every_head_of_random_mambas():
    rng = random.Random(17)
    for _ in range(40):
        b = random_mamba(rng, cells=rng.randint(1, 5), max_cell_len=5)
        for v in b.vertices:
            if is_head_vertex(b, v):
                d = build_mamba_path(b, first=v)
                assert v in d.bags[0] and validate(b, d, PATH, 2).ok


def test_spaghetti_examples():
    for g in (cycle(5), make_obstruction("S3"), sample_path_of_cycles()):
        assert validate(g, build_spaghetti(g), SPAGHETTI, 2).ok
    with pytest.raises(DecompositionError):
        build_spaghetti(make_obstruction("D3"))


def _ends(d, v):
    xs = set(d.node_sets()[v])
    adj = d.tree_adjacency()
    return xs if len(xs) == 1 else {x for x in xs if len(adj[x] & xs) <= 1}


@given(st.integers(0, 10**6), st.integers(1, 7))
def test_spaghetti_common_end_property(seed, k):
    b = make_tree_of_cycles(seed, cells=k, max_cell_len=6, chain=True, two_boundaried=k < 4 or seed % 2 == 0)
    d = spaghetti_block(b)
    assert validate(b, d, SPAGHETTI, 2).ok
    assert len(d.bags) <= 2 * b.n
    gt, cs = dc.block_cells(b)
    pot = dc._potential_set(cs)
    for i, c in enumerate(cs.cells):
        if cs.simplicial[i] and i not in pot:
            continue
        for u, v in cycle_edges(c):
            if (u, v) not in cs.separators:
                assert _ends(d, u) & _ends(d, v)


def test_directed_examples():
    bowtie = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    for g in (bowtie, make_obstruction("G1"), sample_path_of_cycles()):
        d = build_directed_spaghetti(g)
        assert validate(g, d, DIRECTED, 2).ok


def test_special_examples():
    tri_pendant = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    cert = recognize_spctw2(tri_pendant)
    assert cert.answer
    d = build_special(tri_pendant, cert.peel_trace)
    assert validate(tri_pendant, d, SPECIAL, 2).ok and len(d.bags) == 2
    rng = random.Random(4)
    from width2lab.generators import attach_blocks
    for _ in range(10):
        parts = [random_mamba(rng, cells=rng.randint(1, 3), max_cell_len=5) for _ in range(5)]
        g = attach_blocks(parts, rng)
        cert = recognize_spctw2(g)
        if cert.answer:
            assert validate(g, build_special(g, cert.peel_trace), SPECIAL, 2).ok


def test_variant_hierarchy_on_corpus():
    for g in corpus(3, 60, max_n=40):
        c = recognize_spctw2(g)
        if not c.answer:
            continue
        d = c.decomposition
        assert len(d.bags) <= 2 * max(g.n, 1)
        for v in LADDER[::-1]:
            assert validate(g, d.as_variant(v) if v != SPECIAL else d, v, 2).ok


@pytest.mark.parametrize("n", range(1, 8))
def test_builders_on_all_small_graphs(n):
    for g in all_graphs(n, connected=True):
        if dc.tw2_elimination_order(g) is None:
            continue
        try:
            d = build_spaghetti(g)
        except DecompositionError:
            pass
        else:
            assert validate(g, d, SPAGHETTI, 2).ok
        try:
            d = build_directed_spaghetti(g)
        except DecompositionError:
            pass
        else:
            assert validate(g, d, DIRECTED, 2).ok


def test_ladder_c6():
    c = [0, 1, 2, 3, 4, 5]
    chords, tris = ladder_triangles(c, (0, 1), (3, 4))
    assert len(tris) == 4 and len(chords) == 3
    h = cycle(6).with_edges(chords)
    o = is_strongly_chordal(h)
    assert o is not None and clique_number_chordal(h, o) == 3
    boundary = set(cycle_edges(c)) - {(0, 1), (3, 4)}
    for t in tris:
        own = [e for e in boundary if set(e) <= set(t)]
        assert any(all(not set(e) <= set(t2) for t2 in tris if t2 != t) for e in own)


def test_sc_triangulation_examples():
    tri = cycle(3)
    assert sc_triangulation(tri) == tri
    d3t = cell_completion(make_obstruction("D3"))
    h = sc_triangulation(d3t)
    o = is_strongly_chordal(h)
    assert o is not None and clique_number_chordal(h, o) == 3
    with pytest.raises(DecompositionError):
        sc_triangulation(make_obstruction("S3"))


@given(st.integers(0, 10**6), st.integers(1, 6))
def test_sc_triangulation_properties(seed, k):
    g = make_tree_of_cycles(seed, cells=k, max_cell_len=6, chain=k < 4 or seed % 3 != 0, two_boundaried=True)
    h, d = sc_decomposition(g)
    assert set(g.edges) <= set(h.edges)
    o = is_strongly_chordal(h)
    assert o is not None and clique_number_chordal(h, o) <= 3
    assert validate(g, d, TREE, 2).ok and validate(h, d, TREE, 2).ok


def test_gt_single_vertex_and_path():
    d = build_special_GT(Graph([0]))
    assert list(d.bags.values()) == [frozenset([0, 1])]
    p3 = Graph(range(3), [(0, 1), (1, 2)])
    d = build_special_GT(p3)
    assert len(d.bags) == 3 and d.width <= 3
    assert validate(make_gt(p3), d, SPECIAL, 3).ok


def test_gt_spider():
    t = make_spider_tree(3)
    g = make_gt(t)
    assert (t.n, g.n) == (22, 44)
    d = build_special_GT(t)
    r = validate(g, d, SPECIAL, 3)
    assert r.ok and r.width == 3
    # every bag holding the first copy of a tree vertex also holds the second
    for b in d.bags.values():
        assert all((x ^ 1) in b for x in b)


def test_json_roundtrip():
    d = build_directed_spaghetti(sample_path_of_cycles())
    e = Decomposition.from_json(d.to_json())
    assert e == d
    assert "->" in d.to_dot()
