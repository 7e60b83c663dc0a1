"""Tests for the command-line interface: job execution, report layout,
exit codes, determinism, and the field-override escape hatch."""

import json

import pytest

from spc import cli
from spc.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main, run_job
from spc.symbolic import RoundTripReport

CONIC_JOB = """\
ring QQ[x,y,z]
ideal I = @cehh
check I 2 2
check I 3 2
scan I 3 2
invariants I
"""

ROUNDTRIP_JOB = """\
ring QQ[x,y,z]
ideal I = @cehh
map phi = @ex2
roundtrip I phi 2 2
"""


@pytest.fixture
def job_file(tmp_path):
    p = tmp_path / "points.job"
    p.write_text(CONIC_JOB)
    return str(p)


@pytest.fixture
def roundtrip_file(tmp_path):
    p = tmp_path / "rt.job"
    p.write_text(ROUNDTRIP_JOB)
    return str(p)


def _strip_volatile(node):
    """Drop wall-clock data, keeping everything the engine computed."""
    if isinstance(node, dict):
        return {
            k: _strip_volatile(v)
            for k, v in node.items()
            if k not in ("timestamp", "elapsed_seconds")
        }
    if isinstance(node, list):
        return [_strip_volatile(v) for v in node]
    return node


# ------------------------------------------------------------------ run


def test_run_job_exit_ok(job_file, capsys):
    assert main(["run", job_file]) == EXIT_OK
    out = capsys.readouterr().out
    assert "check I 2 2: not_contained" in out
    assert "witness x^2*y^2*z" in out
    assert "check I 3 2: contained" in out
    assert "lower bound 1" in out
    assert "RESULT: all tasks completed" in out


def test_run_job_json_schema(job_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["run", job_file, "--json", str(out)]) == EXIT_OK
    text = out.read_text()
    assert text.endswith("\n")
    data = json.loads(text)
    assert data["schema"] == 1
    assert data["ring"] == "QQ[x,y,z]"
    assert data["field"] == "QQ"
    assert data["flags"] == {
        "slow": False,
        "threads": 1,
        "verify_certificates": False,
    }
    assert data["field_override"] is None
    kinds = [t["kind"] for t in data["tasks"]]
    assert kinds == ["check", "check", "scan", "invariants"]
    first = data["tasks"][0]
    assert first["status"] == "ok"
    assert first["result"]["verdict"] == "not_contained"
    assert first["result"]["witness"] == "x^2*y^2*z"
    scan = data["tasks"][2]["result"]
    assert scan["failures"] == [
        {"s": 1, "t": 2, "witness": "x*y^2"},
        {"s": 2, "t": 2, "witness": "x^2*y^2*z"},
    ]
    assert scan["skipped_by_theory"] == [[2, 1], [3, 1]]
    assert scan["lower_bound"] == "1"
    inv = data["tasks"][3]["result"]
    assert inv["passed"] == inv["total"] == 10
    # keys are sorted for reproducible byte output
    assert text == json.dumps(data, indent=2, sort_keys=True) + "\n"


def test_run_job_deterministic_output(job_file):
    first = run_job(job_file)
    second = run_job(job_file)
    assert _strip_volatile(first.data) == _strip_volatile(second.data)
    assert first.exit_code == second.exit_code == EXIT_OK


def test_run_job_threads_match_serial(job_file):
    serial = _strip_volatile(run_job(job_file).data)
    threaded = _strip_volatile(run_job(job_file, threads=4).data)
    serial["flags"].pop("threads")
    threaded["flags"].pop("threads")
    assert serial == threaded


def test_run_job_field_override(job_file):
    rep = run_job(job_file, field="GF(9001)")
    assert rep.exit_code == EXIT_OK
    ov = rep.data["field_override"]
    assert ov["declared"] == "QQ"
    assert ov["used"] == "GF(9001)"
    assert "evidence, not proof" in ov["note"]
    assert rep.data["field"] == "GF(9001)"
    # the conclusions agree with the exact run on this configuration
    assert rep.data["tasks"][0]["result"]["verdict"] == "not_contained"
    assert rep.data["tasks"][1]["result"]["verdict"] == "contained"


def test_run_job_field_override_same_field_not_flagged(job_file):
    rep = run_job(job_file, field="QQ")
    assert rep.data["field_override"] is None


def test_run_job_verify_certificates(job_file):
    rep = run_job(job_file, verify_certificates=True)
    assert rep.exit_code == EXIT_OK
    assert rep.data["flags"]["verify_certificates"] is True
    for task in rep.data["tasks"]:
        if task["kind"] == "check":
            assert task["result"]["reverified"] is True
        if task["kind"] == "scan":
            for fail in task["result"]["failures"]:
                assert fail["reverified"] is True


def test_run_job_reports_scan_witnesses(job_file):
    rep = run_job(job_file)
    scan = next(t for t in rep.data["tasks"] if t["kind"] == "scan")
    for fail in scan["result"]["failures"]:
        assert isinstance(fail["witness"], str) and fail["witness"]


def test_roundtrip_task_output(roundtrip_file, capsys):
    assert main(["run", roundtrip_file]) == EXIT_OK
    out = capsys.readouterr().out
    assert "roundtrip I via phi 2 2" in out
    assert "AGREE" in out


def test_roundtrip_json_fields(roundtrip_file):
    rep = run_job(roundtrip_file)
    task = rep.data["tasks"][0]
    res = task["result"]
    assert res["agree"] is True
    assert res["source"]["verdict"] == "not_contained"
    assert res["image"]["verdict"] == "not_contained"
    assert res["pushforward_commutes_with_symbolic_power"] == "skipped"
    assert isinstance(res["saturation_changed"], bool)


def test_roundtrip_slow_checks_identity(roundtrip_file):
    rep = run_job(roundtrip_file, slow=True)
    res = rep.data["tasks"][0]["result"]
    assert res["pushforward_commutes_with_symbolic_power"] is True
    assert rep.exit_code == EXIT_OK


def test_invariants_slow_adds_check(job_file):
    base = run_job(job_file)
    slow = run_job(job_file, slow=True)
    inv = next(t for t in base.data["tasks"] if t["kind"] == "invariants")
    inv_slow = next(t for t in slow.data["tasks"] if t["kind"] == "invariants")
    assert inv_slow["result"]["total"] == inv["result"]["total"] + 1
    assert inv_slow["result"]["passed"] == inv_slow["result"]["total"]
    names = [c["name"] for c in inv_slow["result"]["checks"]]
    assert "els_bound_4_2" in names


# ------------------------------------------------------------ exit codes


def test_missing_file_exits_2(capsys):
    assert main(["run", "/nonexistent/nope.job"]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_bad_job_text_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.job"
    p.write_text("ring QQ[x,y,z]\ncheck I 2 2\n")
    assert main(["run", str(p)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "error:" in err


def test_parse_error_position_reported(tmp_path, capsys):
    p = tmp_path / "bad.job"
    p.write_text("ring QQ[x,y,z]\nideal I = x +\ncheck I 2 2\n")
    assert main(["run", str(p)]) == EXIT_INPUT
    assert "2:" in capsys.readouterr().err


def test_task_error_keeps_other_tasks(tmp_path):
    # an ideal that is not zero-dimensional fails its task but the job
    # still reports the other results
    p = tmp_path / "mixed.job"
    p.write_text(
        "ring QQ[x,y,z]\nideal I = @cehh\nideal J = x\ncheck I 2 2\ncheck J 2 2\n"
    )
    rep = run_job(str(p))
    assert rep.exit_code == EXIT_INPUT
    statuses = [t["status"] for t in rep.data["tasks"]]
    assert statuses == ["ok", "error"]
    assert rep.data["tasks"][0]["result"]["verdict"] == "not_contained"
    assert "0-dimensional" in rep.data["tasks"][1]["error"]


def test_disagreeing_roundtrip_exits_3(roundtrip_file, monkeypatch, capsys):
    real = cli.check_roundtrip

    def tampered(I, phi, m, r):
        rep = real(I, phi, m, r)
        return RoundTripReport(
            source=rep.source,
            image=rep.image,
            agree=False,
            saturation_changed=rep.saturation_changed,
        )

    monkeypatch.setattr(cli, "check_roundtrip", tampered)
    assert main(["run", roundtrip_file]) == EXIT_VIOLATION
    out = capsys.readouterr().out
    assert "DISAGREE" in out


def test_failed_reverification_exits_3(job_file, monkeypatch):
    monkeypatch.setattr(cli, "verify_certificate", lambda cert: False)
    rep = run_job(job_file, verify_certificates=True)
    assert rep.exit_code == EXIT_VIOLATION


def test_input_error_beats_nothing_violation_wins(tmp_path, monkeypatch):
    # a violation anywhere in the job dominates the exit code
    p = tmp_path / "both.job"
    p.write_text("ring QQ[x,y,z]\nideal I = @cehh\nideal J = x\ncheck J 2 2\ncheck I 2 2\n")
    monkeypatch.setattr(cli, "verify_certificate", lambda cert: False)
    rep = run_job(str(p), verify_certificates=True)
    assert rep.exit_code == EXIT_VIOLATION


# -------------------------------------------------------------- catalog


def test_catalog_listing(capsys):
    assert main(["catalog", "list"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("cehh", "fermat(j)", "char3", "ex1", "ex2", "ex4", "ex4b"):
        assert name in out


# ---------------------------------------------------------------- check


def test_check_subcommand_catalog_ref(capsys):
    code = main([
        "check", "--ring", "QQ[x,y,z]", "--ideal", "@cehh", "--m", "2", "--r", "2",
    ])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "not_contained" in out
    assert "x^2*y^2*z" in out


def test_check_subcommand_literal_generators(capsys):
    code = main([
        "check",
        "--ring", "QQ[x,y,z]",
        "--ideal", "x*y^2 ; y*z^2 ; z*x^2 ; x*y*z",
        "--m", "3", "--r", "2",
    ])
    assert code == EXIT_OK
    assert "contained" in capsys.readouterr().out


def test_check_subcommand_fermat_ref(capsys, tmp_path):
    out = tmp_path / "c.json"
    code = main([
        "check", "--ring", "QQ[x,y,z]", "--ideal", "@fermat(3)",
        "--m", "3", "--r", "2", "--json", str(out),
    ])
    assert code == EXIT_OK
    data = json.loads(out.read_text())
    assert data["result"]["verdict"] == "not_contained"


def test_check_subcommand_bad_inputs(capsys):
    assert main([
        "check", "--ring", "QQ[x,y,z]", "--ideal", "@fermat(x)",
        "--m", "2", "--r", "2",
    ]) == EXIT_INPUT
    assert main([
        "check", "--ring", "ZZ[x]", "--ideal", "x", "--m", "2", "--r", "2",
    ]) == EXIT_INPUT
    assert main([
        "check", "--ring", "QQ[x,y,z]", "--ideal", "x + q", "--m", "2", "--r", "2",
    ]) == EXIT_INPUT
    capsys.readouterr()


# ------------------------------------------------------------- invariants


def test_invariant_names_are_stable(job_file):
    rep = run_job(job_file)
    inv = next(t for t in rep.data["tasks"] if t["kind"] == "invariants")
    names = [c["name"] for c in inv["result"]["checks"]]
    assert names == [
        "saturation_idempotent",
        "saturation_contains_ideal",
        "saturated_dimension_is_1",
        "multiplicity_positive",
        "square_inside_symbolic_square",
        "symbolic_powers_antitone",
        "els_bound_2_1",
        "intersection_shrinks",
        "colon_grows",
        "colon_product_back_inside",
    ]
    assert all(c["passed"] for c in inv["result"]["checks"])
