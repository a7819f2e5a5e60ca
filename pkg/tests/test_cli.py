from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from qgraph.cli import main, parse_q
from qgraph.errors import InputError
from qgraph.serialize import load_schema

SCHEMA = load_schema()


@pytest.fixture
def gfile(tmp_path):
    def make(text: str, name: str = "g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return make


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report, out


def test_parse_q():
    assert parse_q("2") == 2
    assert parse_q("3^2") == 9
    assert parse_q("4") == 4
    for bad in ("1", "6", "4^2", "1^3", "x", "2^0"):
        with pytest.raises(InputError):
            parse_q(bad)


def test_charpoly_path(capsys, gfile):
    code, report, _ = run_json(capsys, ["charpoly", "--graph", gfile("3\n1 2\n2 3\n"), "--q", "2"])
    assert code == 0
    assert report["outputs"]["chi"]["coeffs"] == [-4, 8, -5, 1]
    assert report["outputs"]["n_hyperplanes"] == 5
    assert report["outputs"]["n_flats"] == 13


def test_charpoly_empty_edges(capsys, gfile):
    _, report, _ = run_json(capsys, ["charpoly", "--graph", gfile("2\n"), "--q", "2"])
    assert report["outputs"]["chi"]["coeffs"] == [1, -2, 1]


def test_charpoly_affine(capsys, gfile):
    _, report, _ = run_json(capsys, ["charpoly", "--graph", gfile("2\n1 2\n"), "--q", "3", "--kind", "affine"])
    assert report["outputs"]["chi"]["coeffs"] == [27, -12, 1]


def test_deterministic_output(capsys, gfile):
    path = gfile("4\n1 2\n2 3\n3 4\n1 3\n")
    _, _, first = run_json(capsys, ["verify", "congruence", "--graph", path, "--q", "3,4"])
    _, _, second = run_json(capsys, ["verify", "congruence", "--graph", path, "--q", "3,4"])
    assert first == second


def test_timing_is_opt_in(capsys, gfile):
    path = gfile("2\n1 2\n")
    _, report, _ = run_json(capsys, ["charpoly", "--graph", path, "--q", "2"])
    assert "timing" not in report
    _, report, _ = run_json(capsys, ["charpoly", "--graph", path, "--q", "2", "--timing"])
    assert report["timing"]["total_seconds"] >= 0


def test_basis_k2(capsys, gfile):
    code, report, _ = run_json(capsys, ["basis", "--graph", gfile("2\n1 2\n"), "--q", "2"])
    cert = report["outputs"]["certificate"]
    assert code == 0 and cert["verdict"] == "pass"
    assert cert["determinant"]["terms"] == [[[2, 1], 1], [[1, 2], 1]]
    assert cert["field"] == {"p": 2, "m": 1, "q": 2, "modulus": [0, 1]}


def test_basis_triangle_degrees(capsys, gfile):
    _, report, _ = run_json(capsys, ["basis", "--graph", gfile("3\n1 2\n2 3\n1 3\n"), "--q", "2"])
    assert sorted(report["outputs"]["certificate"]["degree_check"]) == [1, 2, 4]


def test_basis_rejects_cycle(capsys, gfile):
    code, report, _ = run_json(capsys, ["basis", "--graph", gfile("4\n1 2\n2 3\n3 4\n4 1\n"), "--q", "2"])
    assert code == 2
    assert report["error"]["witness"] == [1, 2, 3, 4]


def test_exit_codes(capsys, gfile):
    path = gfile("3\n1 2\n2 3\n")
    assert main(["charpoly", "--graph", path, "--q", "1"]) == 2
    assert main(["charpoly", "--graph", path + ".missing", "--q", "2"]) == 2
    assert main(["charpoly", "--graph", gfile("3\n1 9\n", "bad.txt"), "--q", "2"]) == 2
    k4 = gfile("4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n", "k4.txt")
    assert main(["charpoly", "--graph", k4, "--q", "7", "--method", "lattice"]) == 3
    assert main(["verify", "trianglefree", "--graph", k4, "--q", "2"]) == 2
    capsys.readouterr()


@pytest.mark.parametrize("suite,graph,q", [
    ("congruence", "4\n1 2\n2 3\n3 4\n4 1\n", "3"),
    ("trianglefree", "5\n1 2\n2 3\n3 4\n4 5\n5 1\n", "2"),
    ("join", "1\n", "2"),
    ("affine", "3\n1 2\n2 3\n", "2,3"),
    ("delcon", "4\n1 2\n2 3\n1 3\n3 4\n", "3"),
    ("monotone", "3\n1 2\n2 3\n", "3"),
    ("stable", "4\n1 2\n2 3\n3 4\n4 1\n", "3"),
])
def test_verify_suites(capsys, gfile, suite, graph, q):
    code, report, _ = run_json(capsys, ["verify", suite, "--graph", gfile(graph), "--q", q])
    assert code == 0 and report["status"] == "pass"
    assert report["verdicts"]
    assert all(v["status"] in ("pass", "skipped") for v in report["verdicts"])


def test_verify_degenerate_at_q2(capsys, gfile):
    _, report, _ = run_json(capsys, ["verify", "congruence", "--graph", gfile("2\n1 2\n"), "--q", "2"])
    assert {v["status"] for v in report["verdicts"]} == {"degenerate"}


def test_verify_reproduction_suite(capsys):
    code, report, _ = run_json(capsys, ["verify", "--paper"])
    assert code == 0
    assert len(report["verdicts"]) == 9


def test_probe(capsys, gfile):
    code, report, _ = run_json(capsys, ["probe", "--graph", gfile("3\n1 2\n2 3\n"), "--q", "2,3,4,5", "--bound", "2"])
    out = report["outputs"]
    assert code == 0 and out["exploratory"] and out["fitted"]
    assert out["fits"][0]["poly_in_q"] == [0, 0, -1]
    assert all(c["match"] for c in out["limits"])


def test_probe_too_few_samples(capsys, gfile):
    assert main(["probe", "--graph", gfile("3\n1 2\n2 3\n"), "--q", "2,3", "--bound", "2"]) == 2
    capsys.readouterr()


def test_chromatic_expand_stirling(capsys, gfile):
    _, report, _ = run_json(capsys, ["chromatic", "--graph", gfile("3\n1 2\n2 3\n")])
    assert report["outputs"]["chromatic"]["coeffs"] == [0, 1, -2, 1]
    _, report, _ = run_json(capsys, ["expand", "--poly", "0,0,1", "--q", "2"])
    assert report["outputs"]["q_falling"] == [1, 3, 1]
    _, report, _ = run_json(capsys, ["stirling", "--n", "3", "--q", "2"])
    assert report["outputs"]["stirling"] == [0, 1, 4, 1]


def test_text_format(capsys, gfile):
    assert main(["charpoly", "--graph", gfile("3\n1 2\n2 3\n"), "--q", "2"]) == 0
    out = capsys.readouterr().out
    assert "chi(t) = t^3 - 5*t^2 + 8*t - 4" in out and "status: pass" in out


def test_module_entry_point(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("2\n1 2\n")
    proc = subprocess.run([sys.executable, "-m", "qgraph", "charpoly", "--graph", str(path), "--q", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "t^2 - 3*t + 2" in proc.stdout
