"""End-to-end CLI coverage: JSON in, JSON out, and the exit-code contract."""

import json
import subprocess
import sys

import pytest

import subinit.cli as cli
from subinit.errors import InternalInvariantError


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "subinit.cli", *args],
        capture_output=True, text=True)


@pytest.fixture()
def square_ideal(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps(
        {"labels": ["1", "2", "3", "4"], "generators": ["x1*x2 - x3*x4"]}))
    return str(path)


@pytest.fixture()
def square_config(tmp_path):
    path = tmp_path / "square_cfg.json"
    path.write_text(json.dumps(
        {"labels": ["1", "2", "3", "4"],
         "points": [["0", "0"], ["1", "1"], ["1", "0"], ["0", "1"]]}))
    return str(path)


def test_config_command(square_ideal):
    proc = run_cli("config", square_ideal)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["labels"] == ["1", "2", "3", "4"]
    assert len(data["points"]) == 4


def test_initial_command(square_ideal):
    proc = run_cli("initial", square_ideal, "--w", "0,0,1,0")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["generators"] == ["x1*x2"]


def test_initial_output_round_trips_as_ideal_file(square_ideal, tmp_path):
    out = tmp_path / "initial.json"
    assert run_cli("initial", square_ideal, "--w", "1,0,0,0",
                   "--out", str(out)).returncode == 0
    proc = run_cli("config", str(out))
    assert proc.returncode == 0


def test_subdivide_from_config_file(square_config):
    proc = run_cli("subdivide", square_config, "--w", "0,0,1,0")
    data = json.loads(proc.stdout)
    assert data["maximal"] == [["1", "2", "3"], ["1", "2", "4"]]


def test_subdivide_from_ideal(square_ideal):
    proc = run_cli("subdivide", "--ideal", square_ideal, "--w", "0,0,1,0")
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["maximal"]) == 2


def test_subdivide_requires_exactly_one_source(square_ideal, square_config):
    assert run_cli("subdivide", "--w", "0,0,1,0").returncode == 1
    assert run_cli("subdivide", square_config, "--ideal", square_ideal,
                   "--w", "0,0,1,0").returncode == 1


def test_bounds_command(square_ideal):
    proc = run_cli("bounds", square_ideal, "--w", "0,0,1,0")
    data = json.loads(proc.stdout)
    assert data["lower_exact"] is True and data["upper_exact"] is True
    assert data["initial_gens"] == ["x1*x2"]


def test_omega_commands(square_ideal):
    proc = run_cli("omega", square_ideal, "--w", "1,0,0,0")
    assert json.loads(proc.stdout)["member"] is True
    proc = run_cli("omega-star", square_ideal, "--w", "1,0,0,0")
    assert json.loads(proc.stdout)["member"] is True


def test_weight_from_file(square_ideal, tmp_path):
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps({"entries": ["0", "0", "1", "0"]}))
    proc = run_cli("initial", square_ideal, "--w", f"@{wfile}")
    assert json.loads(proc.stdout)["generators"] == ["x1*x2"]
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps(["0", "0", "1/2", "0"]))
    assert run_cli("initial", square_ideal, "--w", f"@{bare}").returncode == 0


def test_census_command(square_ideal):
    proc = run_cli("census", square_ideal, "--samples", "40", "--range", "8",
                   "--seed", "3")
    data = json.loads(proc.stdout)
    assert data["samples_drawn"] == 40 and data["seed"] == 3
    assert all(cls["omega"] in (True, False) for cls in data["classes"])


def test_census_nongeneric_flag(square_ideal):
    proc = run_cli("census", square_ideal, "--samples", "10", "--range", "5",
                   "--seed", "1", "--nongeneric")
    assert json.loads(proc.stdout)["samples_drawn"] == 510


def test_fixture_plucker_and_hypersimplex():
    proc = run_cli("fixture", "plucker", "--n", "4")
    data = json.loads(proc.stdout)
    assert data["labels"][0] == "1,2" and len(data["generators"]) == 1
    proc = run_cli("fixture", "hypersimplex", "--k", "2", "--n", "4")
    assert len(json.loads(proc.stdout)["points"]) == 6


def test_fixture_toric(square_config):
    proc = run_cli("fixture", "toric", square_config)
    assert json.loads(proc.stdout)["generators"] == ["x1*x2 - x3*x4"]


def test_fixture_tree_weight_from_file(tmp_path):
    tree = tmp_path / "tree.json"
    tree.write_text(json.dumps(
        {"n": 4, "edges": [[1, 5, "0"], [2, 5, "0"], [5, 6, "1"],
                           [3, 6, "0"], [4, 6, "0"]]}))
    proc = run_cli("fixture", "tree-weight", str(tree))
    data = json.loads(proc.stdout)
    assert data["entries"] == ["0", "1", "1", "1", "1", "0"]
    assert data["labels"][0] == "1,2"


def test_fixture_tree_weight_random_is_seeded():
    a = run_cli("fixture", "tree-weight", "--random", "5", "--seed", "11")
    b = run_cli("fixture", "tree-weight", "--random", "5", "--seed", "11")
    assert a.stdout == b.stdout and a.returncode == 0


def test_fixture_corank(tmp_path):
    mat = tmp_path / "matroid.json"
    mat.write_text(json.dumps(
        {"n": 4, "k": 2, "bases": [[1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]}))
    proc = run_cli("fixture", "corank", str(mat))
    assert json.loads(proc.stdout)["entries"] == ["3", "2", "2", "2", "2", "2"]


def test_out_flag_writes_file(square_ideal, tmp_path):
    target = tmp_path / "report.json"
    proc = run_cli("bounds", square_ideal, "--w", "0,0,1,0", "--out", str(target))
    assert proc.returncode == 0 and proc.stdout == ""
    assert json.loads(target.read_text())["lower_exact"] is True


def test_user_errors_exit_one(square_ideal, tmp_path):
    assert run_cli("initial", square_ideal, "--w", "1,2").returncode == 1
    assert run_cli("initial", "/nonexistent.json", "--w", "1").returncode == 1
    assert run_cli("no-such-command").returncode == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("config", str(bad)).returncode == 1
    malformed = tmp_path / "malformed.json"
    malformed.write_text(json.dumps({"labels": ["1"], "generators": ["x1 +"]}))
    proc = run_cli("initial", str(malformed), "--w", "0")
    assert proc.returncode == 1 and "error" in proc.stderr


def test_nonhomogeneous_ideal_is_a_user_error(tmp_path):
    path = tmp_path / "inhom.json"
    path.write_text(json.dumps({"labels": ["1", "2"], "generators": ["x1^2 - x2"]}))
    proc = run_cli("bounds", str(path), "--w", "0,1")
    assert proc.returncode == 1


def test_invariant_violations_exit_two(square_ideal, monkeypatch, capsys):
    def boom(*_args, **_kw):
        raise InternalInvariantError("synthetic failure")

    monkeypatch.setattr(cli, "sandwich", boom)
    code = cli.main(["bounds", square_ideal, "--w", "0,0,1,0"])
    assert code == 2
    assert "internal error" in capsys.readouterr().err
