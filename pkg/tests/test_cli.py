import json

import pytest
from click.testing import CliRunner

from hyperham import ExtremalSpec, build, emit, load
from hyperham.cli import cli


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(cli, [str(a) for a in args], env=env)

    return invoke


def _write(path, spec, force=False):
    path.write_text(emit(build(spec, force=force)))
    return path


def test_gen_matches_build(run, tmp_path):
    res = run("gen", "--variant", "bbar", "--n", 8, "--k", 4, "--a", 3, "-o", "g.khg")
    assert res.exit_code == 0
    assert load(tmp_path / "g.khg") == build(ExtremalSpec("bbar", 8, 4, 3))
    res = run("gen", "--variant", "bbar", "--n", 8, "--k", 4, "--a", 2)
    assert res.exit_code == 3
    res = run("gen", "--variant", "bbar", "--n", 8, "--k", 4, "--a", 2, "--force")
    assert res.exit_code == 0 and res.output.startswith("4 8\n")
    res = run("gen", "--variant", "random", "--n", 8, "--k", 4, "--seed", 1)
    assert res.output == run("gen", "--variant", "random", "--n", 8, "--k", 4, "--seed", 1).output


def test_solve_json_shape(run, tmp_path):
    _write(tmp_path / "g.khg", ExtremalSpec("bbar", 8, 4, 2), force=True)
    res = run("solve", "--in", "g.khg")
    out = json.loads(res.output)
    assert res.exit_code == 0
    assert set(out) == {"decision", "witness", "nodes_explored", "wall_ms"}
    assert out["decision"] == "yes" and len(out["witness"]) == 4
    res = run("solve", "--in", "g.khg", "--structure", "pm")
    assert json.loads(res.output)["decision"] == "yes"
    res = run("solve", "--in", "g.khg", "--structure", "l-cycle", "--l", 2)
    assert json.loads(res.output)["decision"] == "yes"
    res = run("solve", "--in", "g.khg", "--structure", "path", "--start", "0,1", "--end", "2,3")
    assert json.loads(res.output)["decision"] in ("yes", "no")


def test_solve_budget_and_input_errors(run, tmp_path):
    _write(tmp_path / "g.khg", ExtremalSpec("bbar", 12, 4, 3))
    res = run("solve", "--in", "g.khg", "--node-limit", 3)
    assert res.exit_code == 2 and json.loads(res.output)["decision"] == "undecided"
    assert run("solve", "--in", "missing.khg").exit_code == 3
    (tmp_path / "bad.khg").write_text("4 8\n0 1 2\n")
    res = run("solve", "--in", "bad.khg")
    assert res.exit_code == 3 and "line 2" in res.output
    assert run("solve", "--in", "g.khg", "--structure", "l-cycle").exit_code == 3
    assert run("frobnicate").exit_code == 3


def test_certify(run, tmp_path):
    _write(tmp_path / "g.khg", ExtremalSpec("bbar", 8, 4, 3))
    res = run("certify", "--in", "g.khg", "--a-size", 3)
    assert res.exit_code == 0
    assert json.loads(res.output)["certificate"]["kind"] == "all-even-with-|A|-odd"
    assert run("certify", "--in", "g.khg", "--a-size", 2).exit_code == 1


def test_closeness(run, tmp_path):
    _write(tmp_path / "g.khg", ExtremalSpec("b", 8, 4, 4), force=True)
    res = run("closeness", "--in", "g.khg", "--variant", "b", "--mode", "exact")
    out = json.loads(res.output)
    assert out["distance"] == 0 and out["epsilon"] == "0" and not out["upper_bound"]
    res = run("closeness", "--in", "g.khg", "--variant", "bbar", "--mode", "local-search")
    assert json.loads(res.output)["upper_bound"]


def test_witness_kinds(run, tmp_path):
    res = run("witness", "--kind", "ff-family", "--n", 5, "--k", 4)
    out = json.loads(res.output)
    assert out["size"] == 5 and out["premise_ok"]
    (tmp_path / "k.khg").write_text(emit(build(ExtremalSpec("bbar", 12, 4, 5))))
    out = json.loads(run("witness", "--kind", "three-edges", "--in", "k.khg").output)
    assert all(len(e) == 4 for e in out["witness"])
    out = json.loads(run("witness", "--kind", "bridge-pair", "--in", "k.khg", "--a-size", 5,
                         "--side", "even", "--d", 3).output)
    assert out["witness"] is not None and out["premise"]["d"] == 3
    assert run("witness", "--kind", "three-edges").exit_code == 3


def test_bridge(run, tmp_path):
    _write(tmp_path / "g.khg", ExtremalSpec("bbar", 12, 6, 6), force=True)
    res = run("bridge", "--in", "g.khg", "--pattern", "11", "--alpha", "1/100", "--ref", "bbar",
              "--a-size", 6)
    assert res.exit_code == 0 and json.loads(res.output)["witness"] is not None
    res = run("bridge", "--in", "g.khg", "--pattern", "1x1", "--a-size", 6)
    assert res.exit_code == 3
    res = run("bridge", "--in", "g.khg", "--pattern", "11", "--alpha", "one", "--a-size", 6)
    assert res.exit_code == 3


def test_threshold(run):
    out = json.loads(run("threshold", "--n", 12, "--k", 6, "--d", 5).output)
    assert out["formula"] == out["brute"] == 1
    assert out["argmax"]["n"] == 12
    out = json.loads(run("threshold", "--n", 12, "--k", 6, "--d", 3).output)
    assert out["formula"] is None
    assert run("threshold", "--n", 12, "--k", 6, "--brute").exit_code == 0
    assert run("threshold", "--n", 7, "--k", 4).exit_code == 3


def test_table_output(run):
    res = run("--table", "threshold", "--n", 8, "--k", 4)
    assert res.exit_code == 0 and "formula" in res.output and "{" not in res.output.splitlines()[0]
    res = run("--table", "suite", "threshold", "--k", 4, "--n-max", 10)
    assert res.exit_code == 0 and res.output.splitlines()[0].split()[:3] == ["n", "formula", "brute"]


def test_suite_exit_codes(run, tmp_path):
    res = run("suite", "prop12", "--k", 4, "--n-max", 8, "-o", "r.json", "--no-timing")
    assert res.exit_code == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["passed"] and "wall_ms" not in rep
    res = run("suite", "prop12", "--k", 5, "--n-max", 8)
    assert res.exit_code == 3


def test_jobs_from_environment(run, tmp_path):
    _write(tmp_path / "g.khg", ExtremalSpec("bbar", 8, 4, 2), force=True)
    a = json.loads(run("solve", "--in", "g.khg", env={"HYPERHAM_JOBS": "2"}).output)
    b = json.loads(run("solve", "--in", "g.khg").output)
    assert a["witness"] == b["witness"]
    assert run("--jobs", 0, "solve", "--in", "g.khg").exit_code == 3
