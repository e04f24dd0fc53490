import json
import subprocess
import sys

import pytest

from smarpoly.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_s_example(capsys):
    code, out, _ = run_cli(capsys, "S", "--q", "2", "t^3")
    assert code == 0 and out == "t^2\n"


def test_tau_sum_example(capsys):
    code, out, _ = run_cli(capsys, "tau-sum", "--q", "2", "--n", "2")
    assert code == 0 and out == "12\n"


def test_fixed_points_example(capsys):
    code, out, _ = run_cli(capsys, "fixed-points", "--q", "2")
    assert code == 0 and out.split() == ["t", "t^2"]
    code, out, _ = run_cli(capsys, "fixed-points", "--q", "5")
    assert code == 0 and out.split() == ["t"]


def test_global_flags_accepted_on_either_side(capsys):
    a = run_cli(capsys, "--q", "3", "S", "t^2")
    b = run_cli(capsys, "S", "--q", "3", "t^2")
    assert a == b and a[1] == "2*t\n"


def test_delta_round_trip(capsys):
    code, out, _ = run_cli(capsys, "delta", "--q", "3", "t^2+2")
    assert code == 0 and out == "11\n"
    code, out, _ = run_cli(capsys, "delta-inv", "--q", "3", "11")
    assert code == 0 and out == "t^2+2\n"


def test_json_poly_output_schema(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "delta", "--q", "2", "t^2+1")
    payload = json.loads(out)
    assert code == 0
    assert payload == {"input": "t^2+1", "delta": "5"}


def test_json_s_output_schema(capsys):
    code, out, _ = run_cli(capsys, "S", "--q", "2", "t^3", "--format", "json")
    payload = json.loads(out)
    assert payload == {"input": "t^3", "S": "t^2", "delta_S": "4"}


def test_json_factor_schema(capsys):
    code, out, _ = run_cli(capsys, "factor", "--q", "2", "t^4+t^2", "--format", "json")
    payload = json.loads(out)
    assert payload["unit"] == 1
    assert payload["factors"] == [["t", 2], ["t+1", 2]]


def test_factor_text_form(capsys):
    code, out, _ = run_cli(capsys, "factor", "--q", "3", "2*t^2+2")
    assert code == 0 and out == "2 * (t^2+1)^1\n"


def test_iterate_and_distance(capsys):
    code, out, _ = run_cli(capsys, "iterate", "--q", "3", "t^2+1", "3")
    assert code == 0 and out == "t^2+1 -> t^2 -> 2*t -> t\n"
    code, out, _ = run_cli(capsys, "distance", "--q", "3", "t^2+1")
    assert code == 0 and out == "3\n"


def test_inverse_image_output(capsys):
    code, out, _ = run_cli(capsys, "inverse-image", "--q", "2", "t^2")
    assert code == 0
    assert out == "d=1 e_min=2 e_max=3\nd=2 e_min=1 e_max=1\n"
    code, out, _ = run_cli(capsys, "inverse-image", "--q", "2", "t^2+1")
    assert code == 0 and out == "no prime-power preimages\n"


def test_valuation_verbs(capsys):
    code, out, _ = run_cli(capsys, "valuation", "--q", "2", "t", "t^3+t")
    assert code == 0 and out == "1\n"
    code, out, _ = run_cli(capsys, "valuation", "--q", "2", "t", "t^2",
                           "--of-factorial")
    assert code == 0 and out == "3\n"


def test_factorial_methods(capsys):
    a = run_cli(capsys, "factorial", "--q", "2", "t^2", "--method", "direct")
    b = run_cli(capsys, "factorial", "--q", "2", "t^2", "--method", "product")
    assert a == b and a[0] == 0


def test_census_csv_header_and_row(capsys):
    code, out, _ = run_cli(capsys, "census", "--q", "2", "--n", "6", "--r", "1",
                           "--format", "csv")
    lines = out.strip().split("\n")
    assert code == 0 and len(lines) == 2
    assert lines[0] == ("q,n,r,mode,total,T,T1,T2,T3,T4,B,D,bound_T1,bound_T2,"
                        "bound_T3,hyp_flags,s4_violations,wall_ms")
    cells = lines[1].split(",")
    assert cells[0] == "2" and cells[1] == "6" and cells[4] == "64"


def test_census_json_has_histograms(capsys):
    code, out, _ = run_cli(capsys, "census", "--q", "3", "--n", "4",
                           "--format", "json", "--shards", "2")
    payload = json.loads(out)
    assert payload["total"] == 81
    assert "hist_omega" in payload and "hist_deg_max_irr" in payload


def test_csv_rejected_outside_census(capsys):
    code, _, err = run_cli(capsys, "delta", "--q", "2", "t", "--format", "csv")
    assert code == 2 and "census" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "delta", "--q", "2", "t^^2")
    assert code == 2 and err.startswith("error:")


def test_domain_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "delta", "--q", "6", "t")
    assert code == 4
    code, _, err = run_cli(capsys, "S", "--q", "2", "0")
    assert code == 0  # S(0) = 0 by convention


def test_cap_error_exit_code_and_json_error(capsys):
    code, _, err = run_cli(capsys, "factorial", "--q", "2", "t^5+t",
                           "--delta-cap", "8", "--format", "json")
    assert code == 3
    payload = json.loads(err)
    assert payload["error"] == "CapExceeded"


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out, _ = run_cli(capsys, "S", "--q", "2", "t^3", "--format", "json",
                           "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["S"] == "t^2"


def test_extension_field_with_modulus(capsys):
    code, out, _ = run_cli(capsys, "factor", "--q", "9",
                           "--modulus", "x^2+2x+2", "t^2+1")
    assert code == 0 and out == "a1 * (t+4)^1 * (t+8)^1\n"


def test_seed_flag_changes_nothing_observable(capsys):
    a = run_cli(capsys, "factor", "--q", "9", "t^6+a5*t^3+a2", "--seed", "1")
    b = run_cli(capsys, "factor", "--q", "9", "t^6+a5*t^3+a2", "--seed", "2")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]  # same factors regardless of random choices


def test_console_script_installed():
    out = subprocess.run([sys.executable, "-m", "smarpoly.cli", "S", "--q", "2",
                          "t^3"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "t^2\n"


def test_verify_single_criterion(capsys):
    code, out, _ = run_cli(capsys, "verify", "--criteria", "5")
    assert code == 0
    assert out.startswith("PASS  5") and "1/1 criteria passed" in out
