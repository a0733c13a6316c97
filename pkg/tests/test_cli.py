import json
import subprocess
import sys

import pytest

from simperm import cli, verify
from simperm.verify import Check, VerificationReport


def run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_check(capsys):
    status, out, _ = run(capsys, "check", "2413")
    assert status == 0
    assert "simple: yes" in out and "skew-merged: yes" in out and "321-avoiding: yes" in out


def test_check_quotient(capsys):
    status, out, _ = run(capsys, "check", "479832156")
    assert status == 0
    assert "simple quotient: 2413[1,132,321,12]" in out
    _, out, _ = run(capsys, "--format", "json", "check", "479832156")
    data = json.loads(out)
    assert data["quotient"] == "2413" and data["parts"] == ["1", "132", "321", "12"]
    assert data["length"] == "9"


@pytest.mark.parametrize("bad", ["", "1123", "x"])
def test_check_parse_error(capsys, bad):
    status, out, err = run(capsys, "check", bad)
    assert status == 2 and not out
    assert "cannot parse" in err


def test_count_totals(capsys):
    status, out, _ = run(capsys, "count", "skew-merged", "1..8", "--format", "json")
    assert status == 0
    rows = json.loads(out)["rows"]
    assert [r["total"] for r in rows] == ["1", "2", "6", "22", "86", "340", "1340", "5254"]


def test_count_simple(capsys):
    _, out, _ = run(capsys, "count", "av321", "4..8", "--simple")
    lines = out.splitlines()
    assert lines[0].split() == ["n", "simple"]
    assert [int(line.split()[1]) for line in lines[1:]] == [2, 2, 7, 14, 37]


def test_count_empty(capsys):
    status, out, _ = run(capsys, "count", "av321", "0..0")
    assert status == 0
    assert out.splitlines()[1].split()[:2] == ["0", "1"]
    assert "excluded" in out
    _, out, _ = run(capsys, "count", "av321", "0..0", "--format", "json")
    assert json.loads(out)["rows"][0]["note"].startswith("empty permutation")


def test_count_table(capsys):
    _, out, _ = run(capsys, "count", "av321", "4", "--table")
    assert out.splitlines()[1].split() == ["4", "14", "2", "9", "3"]


def test_count_errors(capsys):
    status, _, err = run(capsys, "count", "skew-merged", "1..12", "--budget", "100")
    assert status == 2 and "--budget" in err
    status, _, err = run(capsys, "count", "av123", "3")
    assert status == 2
    status, _, err = run(capsys, "count", "av321", "5..3")
    assert status == 2 and "range" in err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("SIMPERM_BUDGET", "10")
    status, _, err = run(capsys, "count", "av321", "8")
    assert status == 2 and "budget" in err


@pytest.mark.parametrize("name, order, expected", [
    ("motzkin_naive", "8", ["1", "1", "2", "4", "9", "21", "51", "127"]),
    ("catalan_c", "4", ["1", "2", "5", "14"]),
])
def test_series(capsys, name, order, expected):
    status, out, _ = run(capsys, "series", name, order, "--format", "json")
    assert status == 0
    data = json.loads(out)
    assert data["coeffs"][1:] == expected
    assert data["provenance"]


def test_series_skew_merged(capsys):
    _, out, _ = run(capsys, "series", "s_skew_merged", "8")
    coeffs = out.splitlines()[-1].split(": ")[1].split(", ")
    assert coeffs[3:] == ["2", "2", "8", "16", "44"]


def test_series_order_flag_and_env(capsys, monkeypatch):
    _, out, _ = run(capsys, "--order", "5", "series", "--name", "catalan_c", "--format", "json")
    assert json.loads(out)["order"] == "5"
    monkeypatch.setenv("SIMPERM_ORDER", "3")
    _, out, _ = run(capsys, "series", "catalan_c", "--format", "json")
    assert json.loads(out)["coeffs"] == ["0", "1", "2", "5"]


def test_series_unknown(capsys):
    status, _, err = run(capsys, "series", "nope", "4")
    assert status == 2
    assert "catalan_c" in err and "f_skew_merged" in err


def test_decompose(capsys):
    status, out, _ = run(capsys, "decompose", "247183596", "--kind", "staircase")
    assert status == 0
    data = json.loads(out.splitlines()[0])
    assert [[v for _, v in c] for c in data["cells"]] == [[2, 4, 7], [1, 3, 5, 6], [8, 9]]
    _, out, _ = run(capsys, "decompose", "3142", "--kind", "spiral", "--format", "json")
    data = json.loads(out)
    assert len(data["cells"]) == 4 and all(len(c) == 1 for c in data["cells"])
    assert len(data["plot"]) == 4


def test_decompose_errors(capsys):
    status, _, err = run(capsys, "decompose", "321", "--kind", "spiral")
    assert status == 2 and "simple" in err and ">= 4" in err
    status, _, err = run(capsys, "decompose", "2143", "--kind", "spiral")
    assert status == 2 and "skew-merged" in err
    status, _, err = run(capsys, "decompose", "321")
    assert status == 2 and "321" in err


def test_verify_identities(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "identities")
    assert status == 0
    assert out.splitlines()[-1].endswith("0 failed")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_degenerate(capsys):
    status, out, _ = run(capsys, "verify", "--max-n", "2", "--format", "json")
    assert status == 0
    data = json.loads(out)
    assert data["summary"]["failed"] == "0"
    assert all(c["status"] == "pass" for c in data["checks"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = VerificationReport([Check("broken", False, "forced")])
    monkeypatch.setattr(verify, "run", lambda *a, **k: bad)
    status, out, _ = run(capsys, "verify")
    assert status == 1
    assert "FAIL" in out


def test_timing_goes_to_stderr(capsys):
    _, out, err = run(capsys, "--timing", "series", "catalan_c", "4")
    assert "elapsed" in err and "elapsed" not in out


def test_output_is_deterministic(capsys):
    argv = ["verify", "--max-n", "6", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "simperm", "check", "3142"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "simple: yes" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "simperm"], capture_output=True, text=True)
    assert proc.returncode == 2
