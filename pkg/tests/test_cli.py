import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from latdiam.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _write_spec(path, obj):
    Path(path).write_text(json.dumps(obj))


def test_gen_writes_deterministic_polytope(runner, tmp_path):
    spec = tmp_path / "spec.json"
    _write_spec(spec, {"family": "hexagon_power", "parameters": {"d": 2}})
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        result = runner.invoke(main, ["gen", str(spec), "--out", str(out)])
        assert result.exit_code == 0, result.output
    assert out1.read_bytes() == out2.read_bytes()
    assert len(json.loads(out1.read_text())["points"]) == 6


def test_gen_seed_override(runner, tmp_path):
    spec = tmp_path / "spec.json"
    _write_spec(spec, {"family": "random_hull", "parameters": {"n": 3, "k": 3, "budget": 5}, "seed": 1})
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert runner.invoke(main, ["gen", str(spec), "--out", str(a)]).exit_code == 0
    assert runner.invoke(main, ["gen", str(spec), "--seed", "2", "--out", str(b)]).exit_code == 0
    base = runner.invoke(main, ["gen", str(spec), "--seed", "1", "--out", str(b)])
    assert base.exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_diameter_line(runner, tmp_path):
    spec = tmp_path / "spec.json"
    _write_spec(spec, {"family": "octagon3"})
    poly = tmp_path / "oct.json"
    assert runner.invoke(main, ["gen", str(spec), "--out", str(poly)]).exit_code == 0
    result = runner.invoke(main, ["diameter", str(poly)])
    assert result.exit_code == 0
    assert "diameter=4" in result.output
    assert "bound=5" in result.output
    assert "slack 1" in result.output


def test_path_command(runner, tmp_path):
    spec = tmp_path / "spec.json"
    _write_spec(spec, {"family": "hexagon_power", "parameters": {"d": 2}})
    poly = tmp_path / "hex.json"
    cert = tmp_path / "cert.json"
    assert runner.invoke(main, ["gen", str(spec), "--out", str(poly)]).exit_code == 0
    result = runner.invoke(main, ["path", str(poly), "0", "5", "--out", str(cert)])
    assert result.exit_code == 0, result.output
    blob = json.loads(cert.read_text())
    assert set(blob) == {"d", "k", "bound", "length", "path", "trace"}
    assert blob["length"] <= blob["bound"]


def test_path_same_vertex_exits_2(runner, tmp_path):
    spec = tmp_path / "spec.json"
    _write_spec(spec, {"family": "hexagon_power", "parameters": {"d": 2}})
    poly = tmp_path / "hex.json"
    runner.invoke(main, ["gen", str(spec), "--out", str(poly)])
    result = runner.invoke(main, ["path", str(poly), "3", "3"])
    assert result.exit_code == 2


def test_skeleton_formats(runner, tmp_path):
    spec = tmp_path / "spec.json"
    _write_spec(spec, {"family": "hypercube", "parameters": {"d": 2, "k": 1}})
    poly = tmp_path / "sq.json"
    runner.invoke(main, ["gen", str(spec), "--out", str(poly)])
    sk = tmp_path / "sk.json"
    result = runner.invoke(main, ["skeleton", str(poly), "--out", str(sk)])
    assert result.exit_code == 0
    assert json.loads(sk.read_text())["vertex_count"] == 4
    dot = tmp_path / "sk.dot"
    result = runner.invoke(main, ["skeleton", str(poly), "--format", "dot", "--out", str(dot)])
    assert result.exit_code == 0
    assert dot.read_text().startswith("graph skeleton {")


def test_half_integral_polytope_file(runner, tmp_path):
    poly = tmp_path / "half.json"
    _write_spec(
        poly,
        {
            "ambient_dim": 2,
            "k": 1,
            "points": [["0", "0"], ["1", "0"], ["0", "1"], ["1/2", "1/2"]],
        },
    )
    result = runner.invoke(main, ["diameter", str(poly)])
    assert result.exit_code == 0
    assert "k=2" in result.output
    assert "vertices=3" in result.output


def test_missing_file_exits_2(runner):
    result = runner.invoke(main, ["diameter", "no-such-file.json"])
    assert result.exit_code == 2


def test_unreachable_server_exits_2(runner, tmp_path):
    poly = tmp_path / "p.json"
    _write_spec(poly, {"ambient_dim": 1, "k": 1, "points": [[0], [1]]})
    result = runner.invoke(
        main, ["--server", "http://127.0.0.1:1", "diameter", str(poly)]
    )
    assert result.exit_code == 2
    assert "cannot reach service" in result.output


def test_invalid_json_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    result = runner.invoke(main, ["gen", str(bad)])
    assert result.exit_code == 2


def test_verify_writes_both_reports_deterministically(runner, tmp_path):
    suite = tmp_path / "suite.json"
    _write_spec(
        suite,
        {
            "seed": 8,
            "hypercube_dims": [1, 2],
            "hexagon_dims": [1],
            "include_octagon": False,
            "matching_graphs": ["path2"],
            "random_count": 2,
            "random_budget": [5, 9],
            "product_pairs": 2,
            "max_pairs_per_instance": 15,
        },
    )
    out1 = tmp_path / "r1"
    out2 = tmp_path / "r2"
    res1 = runner.invoke(main, ["verify", str(suite), "--out", str(out1)])
    assert res1.exit_code == 0, res1.output
    res2 = runner.invoke(main, ["verify", str(suite), "--out", str(out2), "--format", "csv"])
    assert res2.exit_code == 0
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()
    assert (tmp_path / "r1.csv").read_bytes() == (tmp_path / "r2.csv").read_bytes()
    assert '"violations": 0' in res1.output or '"violations": 0' in (tmp_path / "r1.json").read_text()


def test_verify_seed_override_changes_report(runner, tmp_path):
    suite = tmp_path / "suite.json"
    _write_spec(
        suite,
        {
            "hypercube_dims": [1],
            "hexagon_dims": [1],
            "include_octagon": False,
            "matching_graphs": [],
            "random_count": 2,
            "random_budget": [5, 9],
            "product_pairs": 0,
        },
    )
    a, b = tmp_path / "a", tmp_path / "b"
    assert runner.invoke(main, ["verify", str(suite), "--seed", "1", "--out", str(a)]).exit_code == 0
    assert runner.invoke(main, ["verify", str(suite), "--seed", "2", "--out", str(b)]).exit_code == 0
    assert (tmp_path / "a.json").read_bytes() != (tmp_path / "b.json").read_bytes()


def test_help_lists_subcommands(runner):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for cmd in ("gen", "skeleton", "diameter", "path", "verify", "serve"):
        assert cmd in result.output


def test_verify_violation_exits_3_with_dump(runner, tmp_path, monkeypatch):
    # Poison the bound so the in-process service must report a violation;
    # the CLI has to exit 3 and leave a reproducer dump behind.
    import latdiam.experiments as experiments

    monkeypatch.setattr(experiments, "diameter_bound", lambda d, k: -1)
    suite = tmp_path / "suite.json"
    _write_spec(
        suite,
        {
            "hypercube_dims": [1],
            "hexagon_dims": [],
            "include_octagon": False,
            "matching_graphs": [],
            "random_count": 0,
            "product_pairs": 0,
        },
    )
    with runner.isolated_filesystem(temp_dir=tmp_path):
        result = runner.invoke(main, ["verify", str(suite)])
        assert result.exit_code == 3
        dump = json.loads(Path("latdiam-dump.json").read_text())
        assert dump["violations"][0]["kind"] == "diameter_bound"
        assert "polytope" in dump["violations"][0]


def test_verify_parallel_jobs_match_serial(runner, tmp_path):
    suite = tmp_path / "suite.json"
    _write_spec(
        suite,
        {
            "seed": 4,
            "hypercube_dims": [1, 2],
            "hexagon_dims": [1],
            "include_octagon": False,
            "matching_graphs": [],
            "random_count": 2,
            "random_budget": [5, 9],
            "product_pairs": 1,
        },
    )
    a, b = tmp_path / "serial", tmp_path / "parallel"
    assert runner.invoke(main, ["verify", str(suite), "--out", str(a)]).exit_code == 0
    assert runner.invoke(main, ["verify", str(suite), "--out", str(b), "--jobs", "2"]).exit_code == 0
    assert (tmp_path / "serial.json").read_bytes() == (tmp_path / "parallel.json").read_bytes()
