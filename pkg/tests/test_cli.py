import json
import subprocess
import sys

import pytest

from width2lab.cli import main
from width2lab.decomp import build_directed_spaghetti
from width2lab.generators import sample_path_of_cycles, make_obstruction
from width2lab.io import format_edge_list, to_graph6


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_recognize_g1(capsys, write):
    f = write("g1.txt", format_edge_list(make_obstruction("G1")))
    code, out, _ = run(capsys, "recognize", "--param", "spctw", "--bound", "2", f)
    cert = json.loads(out)
    assert code == 0 and cert["answer"] == "no" and cert["witness"]["obstruction"] == "G1"


def test_recognize_tree_width_one(capsys, write):
    f = write("t.txt", "4 3\n0 1\n1 2\n1 3\n")
    code, out, _ = run(capsys, "recognize", "--param", "tw", "--bound", "1", f)
    assert code == 0 and json.loads(out)["answer"] == "yes"


def test_recognize_text_and_jobs(capsys, write):
    g6 = "\n".join(to_graph6(make_obstruction(o)) for o in ("K4", "D3", "S3", "H1")) + "\n"
    f = write("many.g6", g6)
    code, out, _ = run(capsys, "recognize", "--param", "sptw", "--format", "text", "--jobs", "2", f)
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert "K4 minor" in lines[0] and "D3 minor" in lines[1] and lines[2].endswith("yes")


def test_parse_error_exit_two(capsys, write):
    f = write("bad.txt", "3 1\n0 7\n")
    code, _, err = run(capsys, "recognize", f)
    assert code == 2 and "bad.txt:2:" in err


def test_missing_file_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "recognize", str(tmp_path / "nope.txt"))
    assert code == 2


def test_decompose_and_validate(capsys, write):
    g = sample_path_of_cycles()
    gf = write("poc.txt", format_edge_list(g))
    code, out, _ = run(capsys, "decompose", "--param", "dptw", gf)
    assert code == 0
    df = write("d.json", out)
    code, out, _ = run(capsys, "validate", gf, df, "--bound", "2")
    assert code == 0 and json.loads(out)["ok"]
    d = json.loads(open(df).read())
    d["nodes"][0]["bag"] = []
    bad = write("bad.json", json.dumps(d))
    code, out, _ = run(capsys, "validate", gf, bad)
    assert code == 1 and not json.loads(out)["ok"]


def test_decompose_no_instance(capsys, write):
    f = write("k4.txt", format_edge_list(make_obstruction("K4")))
    code, _, err = run(capsys, "decompose", "--param", "tw", f)
    assert code == 2 and "K4" in err


def test_decompose_dot(capsys, write):
    f = write("c.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, out, _ = run(capsys, "decompose", "--param", "spctw", "--format", "dot", f)
    assert code == 0 and out.startswith("digraph")


def test_minor(capsys, write):
    f = write("s3.txt", format_edge_list(make_obstruction("S3")))
    code, out, _ = run(capsys, "minor", f, "--pattern", "K4")
    assert code == 0 and json.loads(out)["found"] is False
    h = write("h1.txt", format_edge_list(make_obstruction("H1")))
    code, out, _ = run(capsys, "minor", h, "--pattern", "H1", "--root", "0")
    assert json.loads(out)["found"] is True


def test_cells(capsys, write):
    f = write("s3.txt", format_edge_list(make_obstruction("S3")))
    code, out, _ = run(capsys, "cells", f)
    rep = json.loads(out)
    assert code == 0 and len(rep["blocks"]) == 1 and len(rep["blocks"][0]["cells"]) == 4


def test_generate_deterministic(capsys):
    a = run(capsys, "generate", "corpus", "--count", "3", "--seed", "5", "--max-n", "20")[1]
    b = run(capsys, "generate", "corpus", "--count", "3", "--seed", "5", "--max-n", "20", "--format", "graph6")[1]
    c = run(capsys, "generate", "corpus", "--count", "3", "--seed", "5", "--max-n", "20", "--format", "graph6")[1]
    assert a and b == c and len(b.split()) == 3


def test_generate_kinds(capsys):
    for kind in ("G2", "sun", "sc", "nest-sc", "spider", "gt", "gt-prime", "path-of-cycles", "tree-of-cycles", "mamba"):
        code, out, _ = run(capsys, "generate", kind, "--seed", "1")
        assert code == 0 and out
    assert run(capsys, "generate", "bogus")[0] == 2


def test_oracle(capsys, write):
    f = write("s3.txt", format_edge_list(make_obstruction("S3")))
    code, out, _ = run(capsys, "oracle", "pathwidth", f)
    assert json.loads(out)["pathwidth"] == 3
    code, out, _ = run(capsys, "oracle", "sctw", f)
    assert json.loads(out)["sctw"] == 3
    h = write("h1.txt", format_edge_list(make_obstruction("H1")))
    code, out, _ = run(capsys, "oracle", "head", "--vertex", "0", h)
    assert json.loads(out)["head"] is False


def test_oracle_cap(capsys, write):
    f = write("s3.txt", format_edge_list(make_obstruction("S3")))
    code, _, err = run(capsys, "oracle", "pathwidth", "--oracle-cap", "4", f)
    assert code == 2 and "cap" in err


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--max-n", "5")
    assert code == 0 and out.strip().endswith("0 disagreements")


def test_module_entry_point(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(format_edge_list(make_obstruction("D3")))
    r = subprocess.run([sys.executable, "-m", "width2lab", "recognize", "--param", "sctw", str(p)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["answer"] == "yes"
