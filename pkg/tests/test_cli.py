from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from chibound.cli import run_cli
from chibound.graph import Graph, parse_dimacs, write_dimacs


@pytest.fixture
def c5(tmp_path):
    p = tmp_path / "c5.col"
    p.write_text(write_dimacs(Graph.cycle(5)))
    return p


@pytest.fixture
def c4(tmp_path):
    p = tmp_path / "c4.col"
    p.write_text(write_dimacs(Graph.cycle(4)))
    return p


def run(capsys, *argv):
    code = run_cli([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_color_c5(capsys, c5):
    code, out, _ = run(capsys, "color", c5)
    rep = json.loads(out)
    assert code == 0
    assert rep["colors_used"] == 3 and rep["bound"] == 3 and rep["passes"] is True
    assert rep["input"]["chi"] == 3 and rep["branch_trace"][0]["branch"] == "brooks"


def test_color_csv(capsys, c5):
    code, out, _ = run(capsys, "color", c5, "--csv")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0 and rows[0]["colors_used"] == "3" and rows[0]["branches"] == "brooks"


def test_color_env_seed(capsys, c5, monkeypatch):
    monkeypatch.setenv("CHIBOUND_SEED", "42")
    _, out, _ = run(capsys, "color", c5, "--no-coloring")
    rep = json.loads(out)
    assert rep["seed"] == 42 and "coloring" not in rep


def test_verify(capsys, c5, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 1\n2 2\n3 1\n4 2\n5 3\n")
    bad = tmp_path / "bad.txt"
    bad.write_text('{"1": 1, "2": 1, "3": 2, "4": 1, "5": 2}')
    code, out, _ = run(capsys, "verify", c5, good)
    assert code == 0 and json.loads(out)["proper"]
    code, out, _ = run(capsys, "verify", c5, bad)
    assert code == 1 and json.loads(out)["conflict"] == [1, 2]


def test_color_output_verifies(capsys, c5, tmp_path):
    out_file = tmp_path / "rep.json"
    assert run(capsys, "color", c5, "--out", out_file)[0] == 0
    assert run(capsys, "verify", c5, out_file)[0] == 0


def test_gen_gnp_is_reproducible(capsys):
    _, a, _ = run(capsys, "gen", "gnp", "--n", 12, "--p", 0.4, "--seed", 5)
    _, b, _ = run(capsys, "gen", "gnp", "--n", 12, "--p", 0.4, "--seed", 5)
    assert a == b and parse_dimacs(a).n == 12


def test_gen_regularize(capsys, tmp_path):
    p = tmp_path / "p3.col"
    p.write_text(write_dimacs(Graph.path(3)))
    _, out, _ = run(capsys, "gen", "regularize", p)
    g = parse_dimacs(out)
    assert g.n == 6 and g.is_regular()


def test_gen_dense_infeasible_is_usage_error(capsys):
    code, _, err = run(capsys, "gen", "dense", "--delta", 12, "--alpha", "1/160")
    assert code == 2 and "missing" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nope"],
        ["color"],
        ["color", "/no/such/file.col"],
        ["sparse-sim", "x.col"],
        ["color", "x.col", "--json", "--csv"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_reports_line(capsys, tmp_path):
    p = tmp_path / "bad.col"
    p.write_text("p edge 3 1\ne 1 9\n")
    code, _, err = run(capsys, "color", p)
    assert code == 2 and "line 2" in err


def test_isr(capsys, c4):
    code, out, _ = run(capsys, "isr", c4, "--classes", "1,3;2,4")
    assert code == 0 and json.loads(out)["kind"] == "not-found"
    code, out, _ = run(capsys, "isr", c4, "--classes", "1,2;3,4")
    assert json.loads(out)["stable_set"] in ([1, 3], [2, 4])
    code, out, _ = run(capsys, "isr", c4, "--classes", "1,2;3,4", "--required", 2)
    assert json.loads(out)["stable_set"] == [2, 4]
    assert run(capsys, "isr", c4, "--classes", "1,9;2")[0] == 2


def test_hit_and_analyze(capsys, tmp_path):
    p = tmp_path / "k4k4.col"
    p.write_text(write_dimacs(Graph.disjoint_union(Graph.complete(4), Graph.complete(4))))
    code, out, _ = run(capsys, "hit", p)
    h = json.loads(out)
    assert code == 0 and h["applicable"] and h["hits_every_maximum_clique"] and len(h["stable_set"]) == 2
    code, out, _ = run(capsys, "analyze", p)
    a = json.loads(out)
    assert code == 0 and a["omega"] == 4 and len(a["components"]) == 2
    code, out, _ = run(capsys, "analyze", p, "--csv")
    assert len(list(csv.DictReader(out.splitlines()))) == 2


def test_hit_inapplicable(capsys, c5):
    code, out, _ = run(capsys, "hit", c5)
    assert code == 0 and json.loads(out)["applicable"] is False


def test_sparse_sim(capsys, tmp_path):
    p = tmp_path / "pet.col"
    p.write_text(write_dimacs(Graph.petersen()))
    csv_path, png = tmp_path / "stats.csv", tmp_path / "stats.png"
    code, out, _ = run(capsys, "sparse-sim", p, "--trials", 2000, "--B", 3, "--seed", 1, "--csv", csv_path, "--plot", png)
    s = json.loads(out)
    assert code == 0 and s["checks"]["x_equals_at_minus_del"] and not s["regularized"]
    assert len(list(csv.DictReader(csv_path.read_text().splitlines()))) == 10
    assert png.stat().st_size > 1000


def test_sparse_sim_regularizes(capsys, tmp_path):
    p = tmp_path / "star.col"
    p.write_text(write_dimacs(Graph.star(3)))
    code, out, _ = run(capsys, "sparse-sim", p, "--trials", 50, "--B", 1)
    assert code == 0 and json.loads(out)["regularized"]


def test_batch(capsys, tmp_path, c5, c4):
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "batch", c5, c4, "--out-dir", out_dir)
    assert code == 0 and json.loads(out)["all_pass"]
    rows = list(csv.DictReader((out_dir / "summary.csv").read_text().splitlines()))
    assert [r["colors_used"] for r in rows] == ["3", "2"]
    assert (out_dir / "summary.png").stat().st_size > 1000


def test_console_script(c5):
    proc = subprocess.run(
        [sys.executable, "-m", "chibound.cli", "color", str(c5), "--no-coloring"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["passes"] is True
