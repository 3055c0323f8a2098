import json
import subprocess
import sys

import pytest

from jettower.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == argv[0]
    return doc["result"]


def test_lnumbers(capsys):
    res = run_json(capsys, "lnumbers")
    assert res["9"]["5"] == 86
    code, out, _ = run(capsys, "lnumbers", "--fmax", "2")
    assert code == 0 and out.splitlines()[-1].split() == ["f=2", "|", "1", "-1", "1"]


def test_segre(capsys):
    code, out, _ = run(capsys, "segre", "--n", "2", "--k", "0", "--i", "1")
    assert out.strip() == "s_1(F_0) = (d - 4)*a + (r + chi)*b"
    res = run_json(capsys, "segre", "--n", "1", "--k", "1")
    assert set(res["segre"]) == {"0", "1", "2", "3"}


def test_intersect(capsys):
    code, out, _ = run(capsys, "intersect", "--n", "2", "--k", "0", "--expr", "a^3")
    assert (code, out.strip()) == (0, "r")
    res = run_json(capsys, "intersect", "--n", "2", "--k", "0", "--expr", "a^2*b")
    assert res["intersection"]["terms"] == [{"coeff": "1", "exps": {"d": 1}}]
    code, out, _ = run(capsys, "intersect", "--n", "2", "--k", "1", "--expr", "a1^3",
                       "--pushforward", "0")
    assert out.strip() == "(d - 4)*a + (r + chi)*b"


def test_morse(capsys):
    res = run_json(capsys, "morse", "--n", "2", "--k", "1", "--A", "a1 + (2+x)*a - x*eps*b",
                   "--B", "(2+x)*a", "--substitute-eps", "--sample", "r=7,d=2,chi=2,x=3")
    assert res["verdict"] == "negative"
    assert res["asymptotic_verdict"] == "negative"


def test_final_argument(capsys):
    code, out, _ = run(capsys, "final-argument", "--n", "2", "--sample", "r=1,d=1", "--ratio", "1")
    assert code == 0 and "negative" in out
    assert "(3^3 - 1)/2 = 13" in out
    res = run_json(capsys, "final-argument", "--n", "2", "--sample",
                   "r=1000000000000000000,d=1000000,chi=2,x=1")
    assert res["morse"]["verdict"] == "positive" and res["big"] is True


def test_small_bounds(capsys):
    assert run_json(capsys, "schwarz", "--weight", "3", "--ratio", "2")["min_deg_lambda"] == "6"
    assert run_json(capsys, "schwarz", "--n", "2", "--ratio", "1")["min_deg_lambda"] == "13"
    assert run_json(capsys, "height", "--n", "1", "--x", "2", "--ratio", "1")["height_bound"] == "2"
    assert run_json(capsys, "nef-cone", "--n", "2", "--deg-lambda0", "6", "--d0", "2")[
        "nef_lower_slope"] == "-1"
    res = run_json(capsys, "h0-bound", "--deg-lambda", "6", "--g", "2", "--d", "2", "--d0", "2",
                   "--deg-lambda0", "6", "--n", "2")
    assert res["bounds"] == [51]


def test_wronskian(capsys):
    code, out, _ = run(capsys, "wronskian", "--kappa", "3")
    assert out.strip() == "det = 12*(z')^6"
    res = run_json(capsys, "wronskian", "--kappa", "2", "--expand")
    assert res["matrix"][1] == ["0", "z'", "2*z*z'"]
    assert res["pole_order_bounds"] == {"horizontal": 8, "vertical": 2}


def test_commutator(capsys):
    res = run_json(capsys, "commutator", "--p", "z^2", "--kappa", "2", "--A", "z", "--A", "1")
    assert res["holds"] is True


@pytest.mark.parametrize("case", ["ltable", "x1", "x2"])
def test_appendix_cases(capsys, case):
    code, out, _ = run(capsys, "appendix", "--case", case)
    assert code == 0
    assert "MISMATCH" not in out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["segre", "--n", "2"], 1),
        (["nosuch"], 1),
        (["morse", "--n", "2", "--k", "1", "--A", "a1", "--B", "a", "--sample", "q=1"], 1),
        (["final-argument", "--n", "2", "--sample", "d=1"], 1),
        (["intersect", "--n", "2", "--k", "1", "--expr", "a^-1"], 2),
        (["commutator", "--p", "z^", "--kappa", "1"], 2),
        (["intersect", "--n", "2", "--k", "1", "--expr", "a2"], 3),
        (["intersect", "--n", "2", "--k", "1", "--expr", "a1"], 3),
        (["nef-cone", "--n", "2", "--deg-lambda0", "1", "--d0", "0"], 3),
        (["segre", "--n", "2", "--k", "12"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_mismatch_exit_code(capsys, monkeypatch):
    import jettower.fixtures as fx

    rows = list(fx.L_TABLE)
    rows[4] = (1, -2, 4, -3, 2)
    monkeypatch.setattr("jettower.appendix.L_TABLE", tuple(rows))
    code, out, _ = run(capsys, "appendix", "--case", "ltable")
    assert code == 4
    assert "MISMATCH row f=4" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jettower", "lnumbers", "--fmax", "1"],
                          capture_output=True, text=True, check=True)
    assert "f=1" in proc.stdout
