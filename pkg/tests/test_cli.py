"""Command-line interface: outputs, formats, and exit codes."""

import json
import math

import pytest

from hessym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# tables

def test_tables_principal_md(capsys):
    code, out, _ = run(capsys, "tables", "principal")
    assert code == 0
    assert "| V1 | 0 | 0 | 0 | 0 |" in out


def test_tables_g8_json(capsys):
    code, out, _ = run(capsys, "tables", "g8", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["structure"]["dim"] == 8
    assert obj["structure"]["brackets"][0][3] == "-Z3"
    assert len(obj["adjoint"]) == 8
    assert obj["adjoint"][3]["images"][0] == "(cos(eps))*Z1 + (-sin(eps))*Z3"


def test_tables_g12_has_no_adjoint_block(capsys):
    code, out, _ = run(capsys, "tables", "g12", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["structure"]["dim"] == 12
    assert "adjoint" not in obj


def test_tables_unknown_algebra_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["tables", "g99"])


# ---------------------------------------------------------------------------
# verify

def test_verify_commutators_json(capsys):
    code, out, err = run(capsys, "verify", "commutators", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "pass"
    assert len(obj["checks"]) == 66
    assert "commutators: pass" in err


def test_verify_writes_deterministic_file(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "optimal", "--points", "200",
               "--format", "json", "--out", str(a))[0] == 0
    assert run(capsys, "verify", "optimal", "--points", "200",
               "--format", "json", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_flagged_suite_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "equivalence")
    assert code == 0
    assert "FLAGGED" in out


# ---------------------------------------------------------------------------
# reduce

def test_reduce_pretty(capsys):
    code, out, _ = run(capsys, "reduce", "0,0,0,0,0,0,1,0")
    assert code == 0
    assert "pattern A1" in out
    assert "replay deviation" in out


def test_reduce_json(capsys):
    code, out, _ = run(capsys, "reduce", "0,0,0,0.5,-0.2,0.7,2,1",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["pattern"] == "A11"
    assert obj["parameters"]["a"] == pytest.approx(0.5)
    assert obj["parameters"]["b"] == pytest.approx(math.sqrt(0.53))
    assert obj["replay_deviation"] < 1e-9
    assert all({"kind", "generator", "value", "note"} <= set(st)
               for st in obj["steps"])


def test_reduce_zero_vector_errors(capsys):
    code, _, err = run(capsys, "reduce", "0,0,0,0,0,0,0,0")
    assert code == 2
    assert "error" in err


def test_reduce_garbage_errors(capsys):
    code, _, err = run(capsys, "reduce", "a,b,c")
    assert code == 2
    assert "could not read" in err


# ---------------------------------------------------------------------------
# check-symmetry

def test_check_symmetry_pass(capsys):
    code, out, _ = run(capsys, "check-symmetry",
                       "--f", "exp(2*x)*(y^2+z^2+1)", "--vf", "1;0;0;u",
                       "--points", "40")
    assert code == 0
    assert "verdict: pass" in out


def test_check_symmetry_principal_on_zero_rhs(capsys):
    code, out, _ = run(capsys, "check-symmetry", "--f", "0",
                       "--vf", "0;0;0;x", "--points", "30")
    assert code == 0


def test_check_symmetry_fail_reports_witness(capsys):
    code, out, _ = run(capsys, "check-symmetry", "--f", "1",
                       "--vf", "x;0;0;0", "--points", "30",
                       "--format", "json")
    assert code == 1
    obj = json.loads(out)
    assert obj["verdict"] == "fail"
    assert obj["max_residual"] > 1e-2
    assert obj["witness"] is not None and "u_xx" in obj["witness"]


def test_check_symmetry_bad_vf_count(capsys):
    code, _, err = run(capsys, "check-symmetry", "--f", "0", "--vf", "1;0;0")
    assert code == 2
    assert "four" in err


def test_check_symmetry_parse_error_has_position(capsys):
    code, _, err = run(capsys, "check-symmetry", "--f", "exp(", "--vf",
                       "1;0;0;u")
    assert code == 2
    assert "position" in err


# ---------------------------------------------------------------------------
# transform

def test_transform_dilation_closed_form(capsys):
    code, out, _ = run(capsys, "transform", "--case", "14", "--t", "0.3",
                       "--u", "x^2 + y^2 + z^2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "pass"
    assert obj["s2_factor"] == pytest.approx(math.exp(-1.2))
    assert "u(0.740818220682*x" in obj["transformed"]
    assert obj["notes"]


def test_transform_shift_on_quadratic_fixture(capsys):
    code, out, _ = run(capsys, "transform", "--case", "1", "--t", "1",
                       "--u", "fixture:1,1,1")
    assert code == 0
    assert "u(x, y, z) + 1" in out
    assert "exp(0*t) = 1" in out


def test_transform_rotation_with_parameter(capsys):
    code, out, _ = run(capsys, "transform", "--case", "6", "--t", "0.5",
                       "--param", "g1=2", "--u", "x*y + z^2 + x^2")
    assert code == 0
    assert "note:" in out and "exp(t)" in out


def test_transform_corrugated_fixture(capsys):
    code, out, _ = run(capsys, "transform", "--case", "12", "--t", "0.4",
                       "--u", "fixture:1,-1,2,1", "--points", "15")
    assert code == 0
    assert "verdict: pass" in out


def test_transform_bad_param_spec(capsys):
    code, _, err = run(capsys, "transform", "--case", "6", "--t", "0.5",
                       "--param", "g1", "--u", "x^2")
    assert code == 2
    assert "NAME=VALUE" in err


def test_transform_bad_fixture_arity(capsys):
    code, _, err = run(capsys, "transform", "--case", "1", "--t", "1",
                       "--u", "fixture:1,1")
    assert code == 2
    assert "fixture" in err


# ---------------------------------------------------------------------------
# invariants

def test_invariants_single_label(capsys):
    code, out, _ = run(capsys, "invariants", "A1")
    assert code == 0
    assert "invariants[A1]" in out
    assert "no invariant involves f" in out


def test_invariants_unknown_label(capsys):
    code, _, err = run(capsys, "invariants", "A99")
    assert code == 2
    assert "A3" in err


def test_invariants_all(capsys):
    code, out, _ = run(capsys, "invariants")
    assert code == 0
    assert "invariants[A3]" in out and "invariants[A1]" in out
