from __future__ import annotations

import json
import subprocess
import sys

import numpy as np

from bipramsey import ClusterPartition, ColoredBipartiteGraph
from bipramsey.cli import main
from bipramsey.constructions import h_tilde
from bipramsey.graph import random_coloring


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, [json.loads(ln) for ln in out.splitlines() if ln.startswith("{")]


def test_construct_and_absent_cycle(tmp_path, capsys):
    h1 = tmp_path / "h1.bcg"
    assert main(["construct", "h-tilde", "--n", "1", "-o", str(h1)]) == 0
    g = ColoredBipartiteGraph.load(h1)
    assert (g.colors == h_tilde(1).colors).all()
    code, recs = run(["cycle", "find", "--color", 1, "--length", 4, h1], capsys)
    assert code == 1 and recs[0]["outcome"] == "absent"


def test_construct_lower_bound_to_stdout(capsys):
    assert main(["construct", "lower-bound", "--lengths", "2,2"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "bcg 2 2 2"


def test_cycle_found(tmp_path, capsys):
    path = tmp_path / "k.bcg"
    ColoredBipartiteGraph(np.ones((4, 4)), 1).save(path)
    code, recs = run(["cycle", "find", "--color", 1, "--length", 8, path], capsys)
    assert code == 0 and recs[0]["length"] == 8 and recs[0]["color"] == 1


def test_cycle_budget_exit(tmp_path, capsys):
    path = tmp_path / "h3.bcg"
    h_tilde(3).save(path)
    code, recs = run(["--budget-ms", 0, "cycle", "find", "--color", 1, "--length", 12, path], capsys)
    assert code in (0, 3)
    if code == 3:
        assert recs[0]["outcome"] == "budget-exhausted"


def test_ramsey_value(capsys):
    code, recs = run(["ramsey", "value", "--lengths", "8,4", "--nmax", 6], capsys)
    assert code == 0 and recs[0]["value"] == 5 and recs[0]["kind"] == "ramsey-value"


def test_ramsey_decide_with_checkpoints(tmp_path, capsys):
    state = tmp_path / "state.json"
    code, recs = run(["ramsey", "decide", "--N", 6, "--lengths", "10,4", "--state", state, "--checkpoint-nodes", 2000,
                      "--budget-ms", 1], capsys)
    if code == 3:
        saved = json.loads(state.read_text())
        assert saved["N"] == 6 and saved["state"]
        code, recs = run(["ramsey", "decide", "--N", 6, "--lengths", "10,4", "--resume", state], capsys)
    assert code == 0 and recs[0]["outcome"] == "all-colorings-hit"


def test_matching_and_decomp(tmp_path, capsys):
    path = tmp_path / "h1.bcg"
    h_tilde(1).save(path)
    code, recs = run(["matching", "best", "--graph", path], capsys)
    assert code == 0 and [r["saturated"] for r in recs] == [4, 6] and all(r["verified"] for r in recs)
    code, recs = run(["decomp", "tutte", "--color", 1, "--alpha", 9, path], capsys)
    assert code == 0 and recs[0]["outcome"] == "decomposition" and recs[0]["verified"]
    code, recs = run(["decomp", "tutte", "--color", 2, "--alpha", 2, path], capsys)
    assert recs[0]["outcome"] == "matching"


def test_regularity_check(tmp_path, capsys):
    g = random_coloring(12, 12, 2, seed=0)
    gp, pp = tmp_path / "g.bcg", tmp_path / "p.txt"
    g.save(gp)
    ClusterPartition.uniform(12, 12, 2).save(pp)
    code, recs = run(["regularity", "check", "--eps", 0.25, "--clusters", pp, gp], capsys)
    assert code == 0 and len(recs) == 2 * 2 * 2
    assert {r["mode"] for r in recs} == {"exact"}
    assert all(r["status"] in ("regular", "irregular") for r in recs)


def test_pipeline_random_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["pipeline", "run", "--random", "120", "--seed", "7", "--clusters", "6", "-o", str(a)]) == 0
    assert main(["pipeline", "run", "--random", "120", "--seed", "7", "--clusters", "6", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rec = json.loads(a.read_text())
    assert rec["verified"] and rec["kind"] == "pipeline"


def test_pipeline_jobs_match_sequential(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    base = ["pipeline", "run", "--random", "96", "--runs", "3", "--seed", "1"]
    assert main(base + ["-o", str(a)]) == 0
    assert main(base + ["--jobs", "2", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 3


def test_pipeline_failure_exit(tmp_path, capsys):
    path = tmp_path / "lb.bcg"
    from bipramsey.constructions import lower_bound_coloring

    lower_bound_coloring([20, 20]).save(path)
    code, recs = run(["pipeline", "run", "--n", 20, path], capsys)
    assert code == 2 and recs[0]["failed_stage"] == "precondition"


def test_usage_errors(tmp_path, capsys):
    assert main(["--bogus"]) == 2
    assert main(["cycle", "find", "--color", "1"]) == 2
    assert main(["cycle", "find", "--color", "1", "--length", "4", str(tmp_path / "missing.bcg")]) == 2
    assert main(["ramsey", "decide", "--N", "3", "--lengths", "4,4,4,4"]) == 2
    assert main(["--help"]) == 0


def test_env_overrides(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("BIPRAMSEY_FORMAT", "table")
    assert main(["ramsey", "decide", "--N", "2", "--lengths", "4,4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("N ") and "good-coloring" in out
    # explicit flag wins over the environment
    assert main(["ramsey", "decide", "--N", "2", "--lengths", "4,4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["outcome"] == "good-coloring"
    monkeypatch.setenv("BIPRAMSEY_SEED", "x")
    assert main(["ramsey", "decide", "--N", "2", "--lengths", "4,4"]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bipramsey", "ramsey", "decide", "--N", "5", "--lengths", "8,4"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["outcome"] == "all-colorings-hit"
