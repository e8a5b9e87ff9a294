import json
import subprocess
import sys

import pytest

from pretzel_surgery.cli import main
from pretzel_surgery.prover import main_script
from pretzel_surgery.prover.dsl import format_script


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_alexander(capsys):
    code, data = run_json(capsys, "alexander", "--s", "3")
    assert code == 0
    assert data["unit_circle_roots"] == 8 and data["degree"] == 10
    assert data["polynomial"] == ["1", "1", "0", "-1", "-1", "-1", "-1", "-1", "0", "1", "1"]
    assert data["salem_profile"]["is_salem"]


def test_alexander_hyperbolicity_flag(capsys):
    code, data = run_json(capsys, "alexander", "--pretzel", "2,3,5")
    assert code == 0 and data["hyperbolicity_condition"] is False


def test_alexander_text(capsys):
    code, out = run(capsys, "alexander", "--s", "3", "--format", "text")
    assert code == 0 and "roots on the unit circle: 8" in out


@pytest.mark.parametrize("argv", [["alexander", "--pretzel", "2,3"], ["alexander", "--s", "2"],
                                  ["alexander"], ["slopes", "--s", "2"],
                                  ["group", "--s", "3", "--p", "4", "--q", "2"]])
def test_invalid_input_exit_2(capsys, argv):
    assert main(argv) == 2


def test_slopes(capsys):
    code, data = run_json(capsys, "slopes", "--s", "3")
    assert code == 0 and data["invariants_ok"]
    cells = {(r["sign_triple"], r["type"]): r["slope"] for r in data["table"]}
    assert cells[("---", "III")] == 24
    assert cells[("+++", "II")] == "not_admissible"
    _, data = run_json(capsys, "slopes", "--s", "5")
    cells = {(r["sign_triple"], r["type"]): r["slope"] for r in data["table"]}
    assert cells[("+-+", "II")] == 8


def test_slopes_type1(capsys):
    code, data = run_json(capsys, "slopes", "--s", "3", "--denominator-bound", "6")
    assert code == 0 and data["type1"] and data["type1_all_positive"]


def test_group(capsys):
    code, data = run_json(capsys, "group", "--s", "3", "--p", "9", "--q", "1")
    assert code == 0
    assert data["longitude_length"] == 30 and data["longitude_homology_class"] == 0
    assert data["h1"] == 9


def test_prove_exit_codes(capsys, tmp_path):
    code, data = run_json(capsys, "prove", "--s", "3", "--p", "9", "--q", "1")
    assert code == 0 and data["result"] == "BOT" and data["independent_check"]["accepted"]
    code, data = run_json(capsys, "prove", "--s", "3", "--p", "8", "--q", "1")
    assert code == 2 and data["failure"]["rule"] == "R-KPOW-SIGN"
    code, data = run_json(capsys, "prove", "--s", "4", "--lemma", "fixedpoint")
    assert code == 0 and data["result"] == "BOT"


def test_prove_script_file(capsys, tmp_path):
    good = tmp_path / "main.prf"
    good.write_text(format_script(main_script(3, 9, 1)))
    assert main(["prove", "--script", str(good)]) == 0
    bad = tmp_path / "bad.prf"
    bad.write_text("context s=3 p=9 q=1\nstep f1 = pow ax_k ???\n")
    capsys.readouterr()
    code, data = run_json(capsys, "prove", "--script", str(bad))
    assert code == 3 and data["result"] == "parse_error" and data["line"] == 2


def test_search(capsys):
    code, data = run_json(capsys, "search", "--s", "3", "--p", "9", "--q", "1",
                          "--max-steps", "0")
    assert code == 2 and data["result"] == "exhausted"


def test_verify_all_empty_range(capsys):
    code, data = run_json(capsys, "verify-all", "--s-range", "5..4")
    assert code == 0 and data["passed"] and data["criteria"] == []


def test_verify_all_bad_range(capsys):
    assert main(["verify-all", "--s-range", "2..5"]) == 2


def test_byte_identical_json():
    argv = [sys.executable, "-m", "pretzel_surgery", "slopes", "--s", "4",
            "--denominator-bound", "6"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
    argv = [sys.executable, "-m", "pretzel_surgery", "prove", "--s", "3", "--p", "9", "--q", "1"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
