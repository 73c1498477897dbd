import json
import subprocess
import sys

import pytest

from ddcayley.cli import EXIT_DATA, EXIT_FAIL, EXIT_NOINPUT, EXIT_OK, EXIT_USAGE, main
from ddcayley.graphs import graph6_encode, Graph

import numpy as np


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_construct_example1(capsys, tmp_path):
    out = tmp_path / "g.g6"
    code, rep = run(capsys, "construct", "--q", "2", "--r", "2", "--lemma2", "--out", str(out))
    assert code == EXIT_OK and rep["exit_code"] == 0
    assert rep["results"]["verification"]["params"] == {"v": 12, "k": 6, "lambda1": 2, "lambda2": 3, "m": 3, "n": 4}
    assert out.read_bytes().endswith(b"\n")
    assert "timing" not in rep


def test_construct_example4(capsys):
    code, rep = run(capsys, "construct", "--q", "4", "--r", "2", "--perm", "1,4,2,5,3")
    assert code == EXIT_OK
    p = rep["results"]["verification"]["params"]
    assert (p["v"], p["k"], p["lambda1"], p["lambda2"], p["m"], p["n"]) == (80, 60, 44, 45, 5, 16)


def test_construct_not_inverse_closed(capsys):
    code, rep = run(capsys, "construct", "--q", "2", "--r", "3", "--perm", "1,2,3,4,5,6,7")
    assert code == EXIT_FAIL and rep["results"]["star_condition"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--q", "6", "--r", "2"],
        ["construct", "--q", "2", "--r", "1"],
        ["construct", "--q", "2", "--r", "2", "--perm", "1,2"],
        ["construct", "--q", "2", "--r", "2", "--perm-index", "9"],
        ["construct", "--q", "2"],
        ["bogus"],
    ],
)
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_enumerate(capsys):
    code, rep = run(capsys, "enumerate", "--q", "2", "--r", "3")
    assert code == EXIT_OK and rep["results"]["count"] == 3
    code, rep = run(capsys, "enumerate", "--q", "2", "--r", "3", "--raw")
    assert rep["results"]["count"] == 21


def test_corpus_iso_verify(capsys, tmp_path):
    g6 = tmp_path / "ex3_all.g6"
    code, rep = run(capsys, "corpus", "--id", "ex3_all", "--verify", "--out", str(g6))
    assert code == EXIT_OK and len(rep["results"]["examples"]) == 5
    code, rep = run(capsys, "iso", "--in", str(g6))
    assert code == EXIT_OK and rep["results"]["class_count"] == 5
    code, rep = run(capsys, "verify", "--in", str(g6))
    assert code == EXIT_OK
    assert all(g["params"]["v"] == 56 for g in rep["results"]["graphs"])


def test_verify_edgeless(capsys, tmp_path):
    path = tmp_path / "edgeless.g6"
    path.write_bytes(graph6_encode(Graph(np.zeros((8, 8), bool))) + b"\n")
    code, rep = run(capsys, "verify", "--in", str(path))
    assert code == EXIT_FAIL
    assert rep["results"]["graphs"][0]["flags"] == ["DEGENERATE"]


def test_verify_bad_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("C\n")
    assert main(["verify", "--in", str(bad)]) == EXIT_DATA
    assert main(["verify", "--in", str(tmp_path / "missing.g6")]) == EXIT_NOINPUT
    c5 = tmp_path / "c5.g6"
    c5.write_bytes(graph6_encode(Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])) + b"\n")
    assert main(["verify", "--in", str(c5)]) == EXIT_FAIL


def test_dds(capsys, tmp_path):
    grp, st = tmp_path / "g.json", tmp_path / "s.json"
    run(capsys, "construct", "--q", "3", "--r", "2", "--dump-group", str(grp), "--dump-set", str(st))
    code, rep = run(capsys, "dds", "--group", str(grp), "--set", str(st))
    assert code == EXIT_OK
    assert (rep["results"]["lambda1"], rep["results"]["lambda2"], rep["results"]["n"]) == (15, 16, 9)


def test_human_and_timing(capsys):
    code, out = run(capsys, "params", "--q", "2", "--r", "3", "--human")
    assert code == EXIT_OK and out.startswith("params: ok")
    code, rep = run(capsys, "params", "--q", "2", "--r", "3", "--timing")
    assert "seconds" in rep["timing"]


def test_deterministic_output():
    cmd = [sys.executable, "-m", "ddcayley", "enumerate", "--q", "3", "--r", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--jobs", "2"], capture_output=True, check=True).stdout
    c = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == c
    assert json.loads(a)["results"] == json.loads(b)["results"]
