import json
import subprocess
import sys

import pytest

from defring.cli import SCHEMA, main

from conftest import A_R


def run(*args):
    res = subprocess.run([sys.executable, "-m", "defring", *args], capture_output=True, text=True)
    return res.returncode, res.stdout, res.stderr


def report(*args):
    code, out, _ = run("--json", *args)
    data = json.loads(out)
    assert data["schema"] == SCHEMA
    return code, data


def test_gb_dvr_basis():
    code, data = report("gb", "--vars", "P", "--gens", "3*P, P^2")
    assert code == 0
    assert set(data["outputs"]["basis"]) == {"3*P", "P^2"}
    assert data["outputs"]["all_hc_units"] is False


def test_gb_unit_ideal():
    code, data = report("gb", "--vars", "x", "--gens", "x, x+1")
    assert data["outputs"]["basis"] == ["1"]


def test_gb_a_r_is_basis():
    code, data = report("gb", "--vars", "X,Y,A,B,C,F", "--order", "lex", "--gens", ", ".join(A_R))
    assert data["outputs"]["is_dgb"] is True


def test_gens_from_file(tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("# a_r\n" + "\n".join(A_R) + "\n", encoding="utf-8")
    code, data = report("hilbert", "--vars", "X,Y,A,B,C,F", "--gens", str(f))
    assert code == 0
    assert data["outputs"]["dimension"] == 3 and data["outputs"]["degree"] == 4
    assert data["outputs"]["values"][:3] == [1, 6, 15]


def test_ideal_subcommands():
    assert report("ideal", "saturate", "--vars", "P", "--ideal", "3*P, P^2", "--by", "l")[1]["outputs"]["basis"] == ["P"]
    out = report("ideal", "member", "--vars", "X,Y,A,B,C,F", "--ideal", ", ".join(A_R), "--poly", "B*Y-C*X")[1]
    assert out["outputs"]["member"] is True
    out = report("ideal", "intersect", "--vars", "x,y", "--ideal", "x", "--other", "y")[1]
    assert out["outputs"]["basis"] == ["x*y"]


def test_hilbert_degrees():
    assert report("hilbert", "--vars", "X,Y,A,B,C,F", "--gens", "A, B, C")[1]["outputs"]["degree"] == 1
    fibre = "A^2 + B*C, 2*A*X - B*F, 2*A*Y - C*F, B*Y - C*X"
    assert report("hilbert", "--vars", "X,Y,A,B,C,F", "--gens", fibre)[1]["outputs"]["degree"] == 6


def test_verify_single_cases():
    code, out, _ = run("verify", "--case", "qplus1_tauxi", "--l", "3", "--q", "2")
    assert code == 0 and "V^2 + 2*V + 3" in out
    code, data = report("verify", "--case", "banal_ram", "--l", "5", "--q", "2")
    assert code == 0
    assert "B*W" in data["outputs"]["results"][0]["target"]


def test_verify_qminus1_all_pass():
    code, data = report("verify", "--case", "all", "--l", "3", "--q", "4")
    assert code == 0
    names = {r.get("case_id") for r in data["outputs"]["results"]}
    assert {"qminus1_tau1", "qminus1_tauzeta"} <= names
    assert all(r["pass"] for r in data["outputs"]["results"])


def test_verify_bm_case():
    code, out, _ = run("verify", "--case", "bm:7", "--l", "3", "--q", "2")
    assert code == 0 and "C[π1] = [a_N] + [a_N']" in out


def test_reports_deterministic():
    a = report("verify", "--l", "5", "--q", "2")[1]
    b = report("verify", "--l", "5", "--q", "2")[1]
    a.pop("timings"), b.pop("timings")
    assert a == b


@pytest.mark.parametrize(
    "args",
    [
        ["gb", "--vars", "P", "--gens", "3*P +"],
        ["gb", "--vars", "P", "--order", "deglex", "--gens", "P"],
        ["ideal", "member", "--vars", "x", "--ideal", "x"],
        ["verify", "--case", "nope"],
        ["verify", "--case", "qplus1_tau1", "--l", "5", "--q", "2"],
        ["hilbert", "--vars", "x", "--gens", "x - 1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(args):
    code, _, err = run(*args)
    assert code == 2


def test_verification_failure_exits_1(monkeypatch, capsys):
    from defring import galois

    class Bad:
        passed = False
        case_id, variant, l, q, label, steps, target, checks = "x", "", 3, 2, "", [], [], []

        def to_json(self):
            return {"pass": False}

    monkeypatch.setattr(galois, "verify_entry", lambda e, i: Bad())
    assert main(["verify", "--case", "qplus1_tauxi", "--l", "3", "--q", "2"]) == 1
    assert "FAIL" in capsys.readouterr().out
