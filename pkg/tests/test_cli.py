import json

import pytest
from click.testing import CliRunner

from fourcolor.cli import main
from fourcolor.fixtures import island_map, tetrahedron
from fourcolor.maps import coloring_from_json, map_from_json, map_to_json


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def tetra_file(tmp_path):
    p = tmp_path / "tetra.json"
    p.write_text(map_to_json(tetrahedron()))
    return str(p)


def test_color_writes_verified_coloring(runner, tetra_file, tmp_path):
    out = tmp_path / "col.json"
    result = runner.invoke(main, ["color", tetra_file, "--out", str(out)])
    assert result.exit_code == 0, result.output
    coloring = coloring_from_json(out.read_text())
    assert len(set(coloring.values())) == 4


def test_color_renders_figure(runner, tetra_file, tmp_path):
    svg = tmp_path / "m.svg"
    result = runner.invoke(
        main, ["color", tetra_file, "--out", str(tmp_path / "c.json"), "--render", str(svg)]
    )
    assert result.exit_code == 0
    assert svg.exists() and svg.stat().st_size > 0


def test_color_missing_file(runner):
    result = runner.invoke(main, ["color", "/nonexistent/map.json"])
    assert result.exit_code == 1


def test_color_malformed_file(runner, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    result = runner.invoke(main, ["color", str(p)])
    assert result.exit_code == 1


def test_verify_roundtrip(runner, tetra_file, tmp_path):
    out = tmp_path / "col.json"
    runner.invoke(main, ["color", tetra_file, "--out", str(out)])
    result = runner.invoke(main, ["verify", tetra_file, str(out)])
    assert result.exit_code == 0
    assert "proper" in result.output


def test_verify_detects_clash(runner, tetra_file, tmp_path):
    bad = tmp_path / "bad.json"
    m = tetrahedron()
    bad.write_text(json.dumps({fid: 0 for fid in m.faces}))
    result = runner.invoke(main, ["verify", tetra_file, str(bad)])
    assert result.exit_code == 1


def test_props_polygon(runner):
    result = runner.invoke(main, ["props", "--polygon", "5"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["A"]["holds"] and report["B"]["holds"]
    assert report["B"]["outer_colors"] == [0]


def test_props_polygon_over_cap(runner):
    result = runner.invoke(main, ["props", "--polygon", "20"])
    assert result.exit_code == 3


def test_props_trace_file(runner, tmp_path):
    t = tmp_path / "trace.json"
    t.write_text(json.dumps({"seed_k": 4, "ops": [[0, 2]]}))
    result = runner.invoke(main, ["props", "--trace", str(t)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["k"] == 4
    assert report["B"]["holds"] is False  # the square + 2-point state


def test_props_requires_one_input(runner):
    assert runner.invoke(main, ["props"]).exit_code == 1
    result = runner.invoke(main, ["props", "--polygon", "4", "--trace", "x.json"])
    assert result.exit_code == 1


def test_gen_produces_valid_map(runner, tmp_path):
    out = tmp_path / "gen.json"
    result = runner.invoke(main, ["gen", "--faces", "10", "--seed", "3", "--out", str(out)])
    assert result.exit_code == 0
    m = map_from_json(out.read_text())
    assert len(m.faces) <= 10
    # generated maps must color end to end
    col = tmp_path / "gen_col.json"
    assert runner.invoke(main, ["color", str(out), "--out", str(col)]).exit_code == 0


def test_gen_deterministic(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    runner.invoke(main, ["gen", "--faces", "9", "--seed", "5", "--out", str(a)])
    runner.invoke(main, ["gen", "--faces", "9", "--seed", "5", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_fuzz_theorems_jsonl(runner, tmp_path):
    out = tmp_path / "fuzz.jsonl"
    result = runner.invoke(
        main,
        ["fuzz-theorems", "--theorem", "2", "--trials", "20", "--seed", "7", "--out", str(out)],
    )
    assert result.exit_code == 0
    lines = [json.loads(line) for line in out.read_text().splitlines() if line]
    assert len(lines) >= 20
    trial_lines = [l for l in lines if "verdict" in l]
    assert {l["verdict"] for l in trial_lines} <= {"consistent", "counterexample", "skipped"}


def test_fuzz_theorems_deterministic(runner, tmp_path):
    args = ["fuzz-theorems", "--theorem", "3", "--trials", "15", "--seed", "2"]
    r1 = runner.invoke(main, args + ["--out", str(tmp_path / "1.jsonl")])
    r2 = runner.invoke(main, args + ["--out", str(tmp_path / "2.jsonl")])
    assert r1.exit_code == r2.exit_code == 0
    assert (tmp_path / "1.jsonl").read_text() == (tmp_path / "2.jsonl").read_text()


def test_export_svg(runner, tmp_path):
    p = tmp_path / "island.json"
    p.write_text(map_to_json(island_map()))
    out = tmp_path / "island.svg"
    result = runner.invoke(main, ["export-svg", str(p), "--out", str(out)])
    assert result.exit_code == 0
    assert out.exists() and out.stat().st_size > 0


def test_export_svg_requires_target(runner, tetra_file):
    assert runner.invoke(main, ["export-svg", tetra_file]).exit_code == 1


def test_envvar_override(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("FOURCOLOR_PROPS_POLYGON", "5")
    result = runner.invoke(main, ["props"], auto_envvar_prefix="FOURCOLOR")
    assert result.exit_code == 0
