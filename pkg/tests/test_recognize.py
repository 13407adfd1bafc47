import json
import random

import pytest
from hypothesis import given, strategies as st

from width2lab.decomp import PATH, validate
from width2lab.generators import attach_blocks, sample_path_of_cycles, make_obstruction, random_mamba
from width2lab.graph import Graph
from width2lab.minors import ROOT, verify_model
from width2lab.oracles import head_vertex_oracle
from width2lab.recognize import (
    PARAMS, Certificate, RecognitionError, check_certificate, is_head_vertex, is_mamba_block, recognize,
    recognize_dptw2, recognize_sctw2, recognize_spctw2, recognize_sptw2, recognize_tw2, width_at_most_one,
)
from conftest import graphs

K4 = make_obstruction("K4")
D3 = make_obstruction("D3")
S3 = make_obstruction("S3")
G1 = make_obstruction("G1")
BOWTIE = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def _sound(g, cert):
    ok, problems = check_certificate(g, cert)
    assert ok, problems
    return cert


def test_width_one():
    tree = Graph(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)])
    for p in PARAMS[:-1]:
        assert _sound(tree, width_at_most_one(tree, p)).answer
        c = _sound(cycle(3), width_at_most_one(cycle(3), p))
        assert not c.answer and c.obstruction == "K3"
        assert width_at_most_one(Graph([]), p).answer


@pytest.mark.parametrize("g, fn, answer, oid", [
    (D3, recognize_tw2, True, None),
    (K4, recognize_tw2, False, "K4"),
    (S3, recognize_tw2, True, None),
    (D3, recognize_sptw2, False, "D3"),
    (S3, recognize_sptw2, True, None),
    (S3, recognize_sctw2, False, "S3"),
    (D3, recognize_sctw2, True, None),
    (cycle(6), recognize_sctw2, True, None),
    (D3, recognize_dptw2, False, "D3"),
    (G1, recognize_dptw2, True, None),
    (BOWTIE, recognize_dptw2, True, None),
    (G1, recognize_spctw2, False, "G1"),
    (sample_path_of_cycles(), recognize_spctw2, True, None),
    (BOWTIE, recognize_spctw2, True, None),
])
def test_examples(g, fn, answer, oid):
    c = _sound(g, fn(g))
    assert c.answer == answer
    if not answer:
        assert c.obstruction == oid


def test_k4_identity_model():
    c = recognize_tw2(K4)
    assert all(len(s) == 1 for s in c.model.branch_sets.values())


def test_two_mambas_at_cut_vertex():
    rng = random.Random(2)
    g = attach_blocks([random_mamba(rng, 3, 5), random_mamba(rng, 3, 5)], rng)
    assert _sound(g, recognize_sptw2(g)).answer


def test_triangle_with_pendant_triangle():
    assert _sound(BOWTIE, recognize_spctw2(BOWTIE)).answer


def test_mamba_block():
    edge = Graph(range(2), [(0, 1)])
    assert is_mamba_block(edge).answer
    c = is_mamba_block(S3)
    assert not c.answer and c.obstruction == "S3"
    c = is_mamba_block(sample_path_of_cycles())
    assert c.answer and validate(sample_path_of_cycles(), c.decomposition, PATH, 2).ok
    with pytest.raises(RecognitionError):
        is_mamba_block(BOWTIE)


def test_head_vertex_examples():
    edge = Graph(range(2), [(0, 1)])
    assert is_head_vertex(edge, 0) and is_head_vertex(edge, 1)
    assert all(is_head_vertex(cycle(7), v) for v in range(7))
    for oid in ("H1", "H2"):
        h = make_obstruction(oid)
        verdict, witness = is_head_vertex(h, ROOT, with_model=True)
        assert not verdict
        pid, m = witness
        assert verify_model(h, make_obstruction(pid), m, (ROOT, ROOT))[0]


def test_head_vertex_matches_oracle():
    rng = random.Random(99)
    for _ in range(60):
        b = random_mamba(rng, cells=rng.randint(1, 4), max_cell_len=4)
        if b.n > 10:
            continue
        for v in b.vertices:
            assert is_head_vertex(b, v) == (head_vertex_oracle(b, v) is not None)


def test_unknown_parameter():
    with pytest.raises(RecognitionError):
        recognize(K4, "bw")
    with pytest.raises(RecognitionError):
        recognize(K4, "tw", bound=3)


def _chain(g):
    a = {p: recognize(g, p).answer for p in ("tw", "sptw", "sctw", "dptw", "spctw")}
    if a["spctw"]:
        assert a["dptw"]
    if a["dptw"]:
        assert a["sptw"] and a["sctw"]
    if a["sptw"] or a["sctw"]:
        assert a["tw"]


@given(graphs(max_n=9))
def test_implication_chain(g):
    _chain(g)


@given(graphs(max_n=9))
def test_certificates_sound(g):
    for p in ("tw", "sptw", "sctw", "dptw", "spctw"):
        for bound in (1, 2):
            _sound(g, recognize(g, p, bound))


def test_peel_order_independence():
    rng = random.Random(50)
    for i in range(12):
        parts = [random_mamba(rng, rng.randint(1, 3), 5) for _ in range(rng.randint(2, 6))]
        if i % 3 == 0:
            parts.append(make_obstruction(rng.choice(["H1", "H2"])))
        g = attach_blocks(parts, rng)
        base = recognize_spctw2(g).answer
        for s in range(50):
            c = recognize_spctw2(g, rng=random.Random(s))
            assert c.answer == base
            if s % 10 == 0:
                _sound(g, c)


def test_certificate_json_roundtrip():
    for g, p in ((G1, "spctw"), (sample_path_of_cycles(), "spctw"), (D3, "sctw")):
        c = recognize(g, p)
        back = Certificate.from_json(json.loads(json.dumps(c.to_json())), g)
        assert check_certificate(g, back)[0]
        assert back.to_json() == c.to_json()
