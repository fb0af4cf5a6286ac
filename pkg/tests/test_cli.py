"""Command line driver: verbs, exit codes, report determinism."""
import hashlib
import json

import pytest

from nervekit.cli import main, run
from nervekit.serialize import canonical_json, from_json


def invoke(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    report = json.loads(out) if out.strip() else None
    return code, report


def test_validate_example(capsys):
    code, rep = invoke(["validate", "--example", "bg:z2"], capsys)
    assert code == 0
    assert all(v["ok"] for v in rep["results"]["validation"])
    assert rep["command"][0] == "validate"


def test_counting_verbs(capsys):
    code, rep = invoke(["hcnerve", "--example", "bg:z2", "--max-dim", "3"], capsys)
    assert code == 0
    assert rep["results"]["levels"] == [1, 1, 2, 8]
    code, rep = invoke(["bspace", "--example", "bg:z2", "--max-dim", "3"], capsys)
    assert code == 0
    assert rep["results"]["levels"] == [1, 2, 16, 512]


def test_compare_verb(capsys):
    code, rep = invoke(
        ["compare", "--example", "bg:z2", "--max-dim", "3", "--coeff", "f2"], capsys
    )
    assert code == 0
    assert rep["results"]["chain_iso"]["verdict"] == "pass"
    assert rep["results"]["consistency"]["verdict"] == "pass"
    assert rep["results"]["map_simplicial"]["ok"] is True


def test_homology_and_pi0(capsys):
    code, rep = invoke(
        ["homology", "--example", "bg:z2", "--max-dim", "2", "--coeff", "f2"], capsys
    )
    assert code == 0
    dims = [g["dim"] for g in rep["results"]["homology"]["groups"]]
    assert dims == [1, 0]
    code, rep = invoke(["pi0", "--example", "discrete:antichain3"], capsys)
    assert code == 0
    assert rep["results"]["count"] == 3


def test_uniq_check(capsys):
    code, rep = invoke(["uniq-check", "--max-cosimplicial", "2"], capsys)
    assert code == 0
    assert rep["results"]["uniqueness"]["bounds"]["families"] == 1
    code, rep = invoke(["uniq-check", "--max-cosimplicial", "1"], capsys)
    assert code == 1
    assert rep["results"]["uniqueness"]["bounds"]["families"] == 2


def test_horncheck_sweeps_category(capsys):
    code, rep = invoke(
        ["horncheck", "--example", "bg:z2", "--max-dim", "2", "--jobs", "2"], capsys
    )
    assert code == 0
    assert all(r["verdict"] == "pass" for r in rep["results"]["horns"])


def test_usage_errors(capsys):
    assert invoke(["nerve"], capsys)[0] == 2
    assert invoke(["nerve", "--example", "bg:q8"], capsys)[0] == 2
    assert invoke(["validate", "--in", "/nonexistent.json"], capsys)[0] == 2
    assert invoke(["frobnicate"], capsys)[0] == 2


def test_example_and_in_are_exclusive(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("{}")
    code, _ = invoke(
        ["validate", "--example", "bg:z2", "--in", str(p)], capsys
    )
    assert code == 2


def test_malformed_file_is_usage_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 0}')
    assert invoke(["validate", "--in", str(p)], capsys)[0] == 2


def test_planted_fixture_fails_validation(fixtures_dir, capsys):
    code, _ = invoke(
        ["validate", "--in", str(fixtures_dir / "broken_unit_cat.json")], capsys
    )
    assert code == 1
    code, _ = invoke(
        ["validate", "--in", str(fixtures_dir / "clean_relative.json")], capsys
    )
    assert code == 0


def test_horncheck_failure_exit_code(fixtures_dir, capsys):
    # the walking arrow nerve misses an outer horn filler
    code, rep = invoke(
        ["horncheck", "--in", str(fixtures_dir / "clean_sset.json"), "--max-dim", "2"],
        capsys,
    )
    assert code == 1
    assert any(r["verdict"] == "fail" for r in rep["results"]["horns"])


def test_emit_cells_artifact_round_trips(capsys):
    code, rep = invoke(
        ["binerve", "--example", "bg:z2", "--max-dim", "2", "--emit-cells"], capsys
    )
    assert code == 0
    art = rep["results"]["artifact"]
    value = from_json(art)
    assert value.space.card(1, 1) == 2


def test_reports_are_deterministic(capsys):
    argv = ["theta", "--example", "bg:z2", "--max-dim", "2", "--rows", "1", "--cols", "1"]
    code1, rep1 = invoke(argv, capsys)
    code2, rep2 = invoke(argv, capsys)
    assert code1 == code2 == 0
    t1, t2 = rep1.pop("timings"), rep2.pop("timings")
    assert rep1 == rep2
    # the digest covers exactly the canonical core
    core = {k: rep1[k] for k in ("command", "inputs", "results")}
    want = hashlib.sha256(canonical_json(core).encode()).hexdigest()
    assert rep1["digest"] == want


def test_out_flag_writes_report(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["pi0", "--example", "bg:z2", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    saved = json.loads(target.read_text())
    assert saved["results"]["count"] == 1


def test_run_returns_report_and_code():
    rep, code, out = run(["example"])
    assert code == 0
    assert "available" in rep["results"]
    assert out is None
