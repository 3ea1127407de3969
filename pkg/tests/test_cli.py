import json
import subprocess
import sys

import pytest

from symmlab import cli, graphs


def run_cli(args, tmp_path=None):
    proc = subprocess.run([sys.executable, "-m", "symmlab.cli", *args],
                          capture_output=True, text=True, timeout=300)
    return proc


def test_build_example_63(tmp_path):
    out = tmp_path / "report.json"
    proc = run_cli(["build", "example-6.3", "--tier", "fast",
                    "--json", str(out)])
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out.read_text())
    assert report["schema"] == cli.SCHEMA
    assert report["report"]["ok"]


def test_build_unknown_entry():
    proc = run_cli(["build", "nosuch"])
    assert proc.returncode == cli.EXIT_INPUT


def test_classify_petersen(tmp_path):
    gfile = tmp_path / "petersen.json"
    gfile.write_text(graphs.to_json(graphs.petersen_graph()))
    out = tmp_path / "profile.json"
    proc = run_cli(["classify", str(gfile), "--json", str(out)])
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out.read_text())
    prof = report["profile"]
    assert prof["vertex_transitive"] and prof["arc_transitive"]
    assert prof["aut_order"] == 120


def test_classify_bad_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    proc = run_cli(["classify", str(bad)])
    assert proc.returncode == cli.EXIT_INPUT


def test_classify_missing_file():
    proc = run_cli(["classify", "/nonexistent/graph.json"])
    assert proc.returncode == cli.EXIT_INPUT


def test_classify_cap_exceeded(tmp_path):
    gfile = tmp_path / "big.json"
    gfile.write_text(graphs.to_json(graphs.cycle_graph(60)))
    proc = run_cli(["classify", str(gfile), "--aut-cap", "10"])
    assert proc.returncode == cli.EXIT_CAP


def test_reports_are_deterministic(tmp_path):
    gfile = tmp_path / "cube.json"
    gfile.write_text(graphs.to_json(graphs.cube_graph()))
    outs = []
    for i in range(2):
        out = tmp_path / f"out{i}.json"
        proc = run_cli(["classify", str(gfile), "--json", str(out)])
        assert proc.returncode == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_dot_output(tmp_path):
    gfile = tmp_path / "c5.json"
    gfile.write_text(graphs.to_json(graphs.cycle_graph(5)))
    dot = tmp_path / "c5.dot"
    proc = run_cli(["classify", str(gfile), "--dot", str(dot),
                    "--json", str(tmp_path / "r.json")])
    assert proc.returncode == 0
    assert dot.read_text().startswith("graph")
