import io
import json

import pytest

from accessfold.cli import main
from conftest import corpus_path


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    lines = [json.loads(x) for x in out.getvalue().splitlines()]
    return code, lines[-1] if lines else None


@pytest.mark.parametrize("name", ["c2_free_c2", "theta", "s3_c2_c4", "amalgam_chain", "wedge3"])
def test_verify_passes_on_corpus(name):
    code, verdict = run("verify", corpus_path(name))
    assert code == 0 and verdict["pass"]


def test_verify_fails_on_hypotheses():
    code, verdict = run("verify", corpus_path("subdivided"))
    assert code == 1
    assert verdict["pipeline_run"] is False
    assert verdict["checks"]["weakly_reduced"] is False


def test_unreadable_instance(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("verify", bad)[0] == 2
    assert run("analyze", tmp_path / "missing.json")[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"groups": {}, "vertices": [{"name": "v", "group": "G"}], "edges": []}))
    assert run("analyze", wrong)[0] == 2


def test_bad_parameters_are_parse_errors():
    assert run("verify", corpus_path("theta"), "--C", "0")[0] == 2


def test_budget_exhaustion():
    code, _ = run("fold", corpus_path("amalgam_chain"), "--step-budget", "0")
    assert code == 4


def test_injected_fault_is_caught(capsys):
    code, _ = run("verify", corpus_path("amalgam_chain"), "--inject-fault", "nonmonotone")
    assert code == 5
    assert "complexity increased" in capsys.readouterr().err


def test_inconclusive_acylindricity():
    code, _ = run("analyze", corpus_path("s3_c2_c4"), "--C", "1", "--depth-cap", "1")
    assert code == 3


def test_dot_snapshots_and_trace(tmp_path):
    dots, trace = tmp_path / "dots", tmp_path / "trace.jsonl"
    code, summary = run("fold", corpus_path("s3_c2_c4"), "--dot-dir", dots, "--trace-out", trace)
    assert code == 0
    files = sorted(p.name for p in dots.iterdir())
    assert len(files) == summary["steps"] + 2
    assert files[0] == "final.dot" and "initial.dot" in files
    assert all(p.read_text().startswith("digraph") for p in dots.iterdir())
    records = [json.loads(x) for x in trace.read_text().splitlines()]
    assert records[0]["op"] == "initial"
    assert [r["c_after"] for r in records] == summary["chain"]
    assert all(r["c_after"] <= r["c_before"] for r in records[1:])


def test_k_zero_reports_the_violated_bound():
    code, verdict = run("verify", corpus_path("theta"), "--k", "0")
    assert code == 1
    assert verdict["bound"] == 1 and verdict["edge_pairs"] == 3
    assert verdict["bound_pass"] is False


def test_force_runs_the_pipeline_anyway():
    code, verdict = run("verify", corpus_path("subdivided"), "--force")
    assert verdict["pipeline_run"] is True
    assert verdict["pass"] is False


def test_analyze_reports():
    code, rep = run("analyze", corpus_path("theta"))
    assert code == 0
    assert rep["betti_number"] == 2 and rep["acylindricity_k"] == 0
    assert [t["kind"] for t in rep["default_tuple"]] == ["hyperbolic", "hyperbolic"]
    code, rep = run("analyze", corpus_path("subdivided"))
    assert code == 1 and rep["weakly_reduced"] is False
    assert rep["weakly_reduced_witness"] is not None
    _, rep = run("analyze", corpus_path("s3_c2_c4"), "--C", "1")
    assert rep["acylindricity_k"] == 2 and rep["acylindricity_witness"]
    _, rep = run("analyze", corpus_path("s3_c2_c4"), "--C", "2")
    assert rep["acylindricity_k"] == 0


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "accessfold", "verify", str(corpus_path("theta"))],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["bound"] == 3
    assert "wall time" in proc.stderr
