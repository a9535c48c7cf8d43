import json
import subprocess
import sys

import pytest

from pbwlie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mu_json(capsys):
    code, out, _ = run(capsys, "mu", "3", "--flavor", "closed", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["terms"]) == 6
    assert obj["terms"][0] == {"word": [1, 2, 3], "coeff": "1/3"}


def test_bch_all(capsys):
    code, out, _ = run(capsys, "bch", "--degree", "4", "--formula", "all")
    assert code == 0
    assert "agreement: all true" in out


def test_bch_json_single_formula(capsys):
    code, out, _ = run(capsys, "bch", "--degree", "2", "--formula", "dynkin", "--format", "json")
    obj = json.loads(out)
    assert [d["degree"] for d in obj["degrees"]] == [1, 2]


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--alphabet", "2", "--degree", "5")
    assert code == 0
    assert out.splitlines()[0] == "2,1,2,3,6"


def test_eval_as_lie(capsys):
    assert run(capsys, "eval", "[X1,X2]", "--as", "lie")[1].strip() == "[X1,X2]"
    assert run(capsys, "eval", "X1*X2 - X2*X1", "--as", "lie")[1].strip() == "[X1,X2]"
    code, _, err = run(capsys, "eval", "X1*X2", "--as", "lie")
    assert code == 1 and "witness" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "[X1,")
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "eval", "exp(X1)")
    assert code == 2 and "TruncationMissing" in err


def test_usage_errors(capsys):
    assert run(capsys, "mu")[0] == 2
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys, "basis", "--alphabet", "5")[0] == 2


def test_basis_registry_persistence(capsys, tmp_path):
    path = tmp_path / "reg.json"
    assert run(capsys, "basis", "--alphabet", "2", "--degree", "4", "--format", "json", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "dims", "--registry", str(path))
    assert out.splitlines()[0] == "2,1,2,3"
    code, out, _ = run(capsys, "basis", "--load", str(path), "--grade", "1,1,2")
    assert out.startswith("grade X1^2 X2: dimension 1")


def test_verify_suite_exit_codes(capsys):
    assert run(capsys, "verify", "pbw-sym", "--degree", "3")[0] == 0
    code, out, _ = run(capsys, "verify", "nilenv", "--degree", "3", "--format", "json")
    assert code == 1
    assert json.loads(out)["reports"][0]["checks"]


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "pbwlie.cli", "verify", "magnus", "--degree", "4", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and "runtime_s" not in a


def test_round_trip_of_printed_output(capsys):
    from pbwlie.expr import evaluate_text
    from pbwlie.freeassoc import to_text
    _, out, _ = run(capsys, "bch", "--degree", "3", "--formula", "magnus")
    for line in out.splitlines():
        rhs = line.split(" = ", 1)[1]
        assert to_text(evaluate_text(rhs)) == rhs


@pytest.mark.parametrize("flavor", ["L", "R", "C", "closed"])
def test_mu_flavors_print_the_same(capsys, flavor):
    _, out, _ = run(capsys, "mu", "4", "--flavor", flavor)
    _, ref, _ = run(capsys, "mu", "4", "--flavor", "closed")
    assert out == ref
