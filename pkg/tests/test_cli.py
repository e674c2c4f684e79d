import json
from pathlib import Path

import pytest

from chowtrace.cli import main
from chowtrace.rostnum import rost_number
from chowtrace.specfile import ConfluenceFailure, SpecError, load_spec, parse_polynomial

SPECS = Path(__file__).parent.parent / "specs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


@pytest.mark.parametrize("name,p,expected", [("Q3", 2, 1), ("P2", 3, 2), ("P1xP1", 2, 0)])
def test_eta(capsys, name, p, expected):
    code, data, _ = run(capsys, "eta", "--variety", name, "--prime", str(p))
    assert code == 0
    assert data["eta_mod_p"] == expected and data["paths_agree"]


def test_poincare(capsys):
    code, data, _ = run(capsys, "poincare", "--group", "F4", "--parabolic", "4")
    assert data == [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1]
    _, data, _ = run(capsys, "poincare", "--group", "A2", "--parabolic", "1")
    assert data == [1, 1, 1]
    _, data, _ = run(capsys, "poincare", "--group", "F4", "--parabolic", "1")
    assert data[-4:] == [1, 1, 1, 1]


@pytest.mark.parametrize("group,par,power,deg", [("A2", "1", 2, 1), ("B2", "1", 3, 2), ("F4", "4", 15, 78)])
def test_degree(capsys, group, par, power, deg):
    code, data, _ = run(capsys, "degree", "--group", group, "--parabolic", par, "--power", str(power))
    assert code == 0 and data["degree"] == deg and data["cross_checked"] is True


def test_check_special(capsys):
    _, data, _ = run(capsys, "check-special", "--variety", "F4/P4", "--prime", "3")
    assert data["dim_test"] == "fail"
    _, data, _ = run(capsys, "check-special", "--variety", "F4/P4", "--prime", "2")
    assert data["verdict"] == "candidate"


def test_steenrod(capsys):
    code, data, _ = run(capsys, "steenrod", "--variety", "F4P4", "--prime", "3", "--solve")
    assert code == 0 and data["s2_codim4_trivial"] is True


def test_exit_codes(capsys):
    assert main(["eta", "--variety", "Nope", "--prime", "2"]) == 1
    assert main(["eta", "--variety", "P3", "--prime", "3"]) == 1
    assert main(["steenrod", "--variety", "F4/P4", "--prime", "3", "--solve", "--bound", "5"]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["eta"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_contract_exit_code(capsys, monkeypatch):
    import chowtrace.rostnum as rn

    monkeypatch.setattr(rn, "phi", lambda c, r, p, method="newton": 0)
    assert main(["eta", "--variety", "Q3", "--prime", "2"]) == 2
    capsys.readouterr()


def test_deterministic_output(capsys):
    outs = []
    for _ in range(2):
        _, _, raw = run(capsys, "check-special", "--variety", "Q5", "--prime", "2")
        outs.append(raw)
    assert outs[0] == outs[1]


def test_spec_presentation_p2(capsys):
    v = load_spec(SPECS / "p2_presentation.toml")
    assert v.dim == 2 and v.euler_characteristic() == 3
    assert rost_number(v, 3) == 2
    code, data, _ = run(capsys, "eta", "--variety", str(SPECS / "p2_presentation.toml"), "--prime", "3")
    assert code == 0 and data["eta_mod_p"] == 2


def test_spec_presentation_q3():
    v = load_spec(SPECS / "q3_presentation.toml")
    assert v.ring.ranks() == [1, 1, 1, 1]
    assert v.euler_characteristic() == 4
    assert rost_number(v, 2) == 1


def test_spec_modes():
    z = load_spec(SPECS / "z_in_f4p4.toml")
    assert z.dim == 8 and rost_number(z, 3) != 0
    assert load_spec(SPECS / "f4p1.toml").dim == 15
    assert load_spec(SPECS / "p1xq3.toml").dim == 4


def test_non_confluent_rules_rejected():
    text = """
[variety]
name = "bad"
dim = 3
[algebra]
mode = "presentation"
generators = [{ name = "a", codim = 1 }, { name = "b", codim = 1 }]
relations = [{ lead = "a*b", rhs = "0" }, { lead = "a^2", rhs = "b^2" }]
[tangent]
chern = ["a"]
"""
    with pytest.raises(ConfluenceFailure):
        load_spec(text)


def test_spec_errors():
    with pytest.raises(SpecError):
        load_spec("[algebra]\nmode = 'weird'\n")
    with pytest.raises(SpecError):
        load_spec("[variety]\ndim = 3\n[algebra]\nmode = 'builtin'\nname = 'P2'\n")
    with pytest.raises(SpecError):
        load_spec("not toml [")


def test_parse_polynomial():
    assert parse_polynomial("2*h^2*x - x + 3", ["h", "x"]) == {(2, 1): 2, (0, 1): -1, (0, 0): 3}
    assert parse_polynomial("0", ["h"]) == {}


def test_paper_suite(capsys):
    code, data, _ = run(capsys, "paper-suite")
    assert code == 0 and data["all_pass"]
