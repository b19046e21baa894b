"""CLI behavior: exit codes, report files, determinism, config handling."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from causalflag.groups import model_preset
from causalflag.kmat import KMat
from causalflag.shilov import chart_point


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "causalflag.cli", *args],
        capture_output=True, text=True, env=env,
    )


def write_triple(path, good=True):
    model = model_preset("sp4")
    pts = [
        chart_point(model, -2.0 * KMat.eye("R", 2)),
        chart_point(model, KMat.zeros("R", 2)),
        chart_point(model, 2.0 * KMat.eye("R", 2)),
    ]
    data = [p.to_json() for p in pts]
    if not good:
        data[0]["frame"]["entries"][1] = [2.0]  # breaks isotropy
    path.write_text(json.dumps({"points": data}))


def test_sylvester_exit_and_report(tmp_path):
    out = tmp_path / "rep"
    r = run_cli(["sylvester-check", "--model", "sp4", "--i", "1",
                 "--trials", "200", "--seed", "5", "--out", str(out)])
    assert r.returncode == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    assert report["report"]["failures"] == 0
    assert report["seed"] == 5


def test_determinism_across_runs_and_threads(tmp_path):
    args = ["maslov-invariance", "--model", "su22", "--trials", "300", "--seed", "9"]
    r1 = run_cli(args)
    r2 = run_cli(args)
    r3 = run_cli(args, env_extra={"CAUSALFLAG_THREADS": "4"})
    assert r1.returncode == r2.returncode == r3.returncode == 0
    assert r1.stdout == r2.stdout == r3.stdout


def test_maslov_triple(tmp_path):
    triple = tmp_path / "triple.json"
    write_triple(triple)
    r = run_cli(["maslov", "--model", "sp4", "--triple", str(triple)])
    assert r.returncode == 0
    report = json.loads(r.stdout)
    assert report["report"]["idx"] == 2


def test_structured_error_exits_2(tmp_path):
    triple = tmp_path / "bad.json"
    write_triple(triple, good=False)
    out = tmp_path / "rep"
    r = run_cli(["maslov", "--model", "sp4", "--triple", str(triple), "--out", str(out)])
    assert r.returncode == 2
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is False
    assert report["error"] == "InvalidFrame"


def test_usage_errors_exit_1(tmp_path):
    assert run_cli(["no-such-command"]).returncode == 1
    assert run_cli(["maslov", "--model", "sp4"]).returncode == 1  # missing --triple
    r = run_cli(["maslov", "--model", "sp4", "--triple", str(tmp_path / "missing.json")])
    assert r.returncode == 1


def test_threads_validation():
    r = run_cli(["hilbert", "--x", "0", "--y", "0.5"],
                env_extra={"CAUSALFLAG_THREADS": "zero"})
    assert r.returncode == 1


def test_hilbert_oracle():
    r = run_cli(["hilbert", "--x", "0", "--y", "0.5"])
    assert r.returncode == 0
    report = json.loads(r.stdout)
    assert abs(report["report"]["distance"] - np.log(3.0)) < 1e-10


def test_rep_build_roundtrip(tmp_path):
    out = tmp_path / "rep"
    r = run_cli(["rep-build", "--rep", "f2-fuchsian-sl2", "--out", str(out)])
    assert r.returncode == 0
    report = json.loads((out / "report.json").read_text())
    assert report["report"]["pingpong"]["passed"] is True
    rep_file = out / "rep.json"
    assert rep_file.exists()
    r2 = run_cli(["rep-gap", "--rep", str(rep_file), "--max-word-len", "4"])
    assert r2.returncode == 0


def test_rep_limitset_csv(tmp_path):
    out = tmp_path / "ls"
    r = run_cli(["rep-limitset", "--rep", "tau0-sp4-f2", "--max-word-len", "5",
                 "--csv", "--out", str(out)])
    assert r.returncode == 0
    report = json.loads((out / "report.json").read_text())
    assert report["report"]["n_points"] >= 10
    assert report["report"]["min_pairwise_margin"] > 1e-6
    lines = (out / "limitset.csv").read_text().strip().splitlines()
    assert len(lines) == report["report"]["n_points"] + 1


def test_hull_queries(tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[[0.0, 0.0], [0.0, 0.0]], [[2.0, 0.0], [0.0, 2.0]]]))
    q = tmp_path / "q.json"
    q.write_text(json.dumps([[[1.0, 0.0], [0.0, 1.0]], [[-1.0, 0.0], [0.0, -1.0]]]))
    r = run_cli(["hull", "--model", "sp4", "--points", str(pts), "--query", str(q)])
    assert r.returncode == 0
    report = json.loads(r.stdout)
    assert report["report"]["memberships"] == [True, False]


def test_config_flags_win(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"trials": 100}))
    # config sets trials when the flag is absent
    r1 = run_cli(["sylvester-check", "--model", "sp4", "--i", "0", "--config", str(cfg)])
    assert json.loads(r1.stdout)["report"]["trials"] == 100
    # an explicit flag beats the config value
    r2 = run_cli(["sylvester-check", "--model", "sp4", "--i", "0",
                  "--trials", "150", "--config", str(cfg)])
    assert json.loads(r2.stdout)["report"]["trials"] == 150


def test_config_rejections(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"no_such_key": 1}))
    r = run_cli(["sylvester-check", "--model", "sp4", "--i", "0", "--config", str(bad)])
    assert r.returncode == 1
    wild = tmp_path / "wild.json"
    wild.write_text(json.dumps({"tolerances": {"margin_floor": 0.5}}))
    r2 = run_cli(["rep-limitset", "--rep", "tau0-sp4-f2", "--max-word-len", "4",
                  "--config", str(wild)])
    assert r2.returncode == 1


def test_ein_commands(tmp_path):
    rng = np.random.default_rng(23)
    pts = []
    while len(pts) < 8:
        x = rng.standard_normal(4)
        x = x / np.linalg.norm(x)
        v = np.concatenate([x, [1.0, 0.0]])
        if all(abs(v[:4] @ np.asarray(p)[:4] - 1.0) > 1e-3 for p in pts):
            pts.append(list(v))
    limit = tmp_path / "limit.json"
    limit.write_text(json.dumps(pts))
    query = tmp_path / "query.json"
    query.write_text(json.dumps([[0.0, 0.0, 0.0, 1.0, 0.0, 1.0]]))
    r = run_cli(["ein-invisible", "--model", "so42", "--limit", str(limit),
                 "--query", str(query)])
    assert r.returncode == 0
    r2 = run_cli(["ein-photon-convexity", "--model", "so42", "--limit", str(limit),
                  "--photons", "50"])
    assert r2.returncode == 0
    assert json.loads(r2.stdout)["report"]["violations"] == 0
