import pytest

from jettower.appendix import run_appendix
from jettower.errors import DomainError
from jettower.fixtures import X3_SPOTS
from jettower.parser import parse_scalar


@pytest.fixture(scope="module")
def x3():
    return run_appendix("x3")


@pytest.mark.parametrize("case", ["ltable", "x1", "x2"])
def test_zero_mismatches(case):
    rep = run_appendix(case)
    assert rep.ok, rep.to_text()
    assert rep.entries and rep.invariants


def test_ltable_report_has_ten_rows():
    assert len(run_appendix("ltable").entries) == 10


def test_x3_every_monomial(x3):
    assert x3.ok, "\n".join(e.description for e in x3.mismatches)
    assert len(x3.entries) == 22 + 30


def _label(ey, ez):
    parts = [v if e == 1 else f"{v}^{e}" for v, e in (("y", ey), ("z", ez)) if e]
    return "*".join(parts) or "1"


def test_x3_spots(x3):
    by_desc = {e.description: e for e in x3.entries}
    for part, (ey, ez), value in X3_SPOTS:
        entry = by_desc[f"{part} {_label(ey, ez)}"]
        assert entry.match and entry.expected == str(value)


def test_x2_reduction_identities():
    lhs = parse_scalar("-2 - 14*(2 + y) + 63*(2 + y)^2 - 70*(2 + y)^3 + 35*(2 + y)^4")
    assert lhs == parse_scalar("222 + 518*y + 483*y^2 + 210*y^3 + 35*y^4")
    lhs = parse_scalar("-7*(-13 + 42*(2 + y) - 45*(2 + y)^2 + 20*(2 + y)^3)")
    assert lhs == parse_scalar("-7*(51 + 102*y + 75*y^2 + 20*y^3)")


def test_report_rendering():
    rep = run_appendix("x1")
    doc = rep.to_json()
    assert doc["ok"] and all(e["status"] == "MATCH" for e in doc["entries"])
    assert rep.to_text().splitlines()[-1].strip().startswith("3/3 match")


def test_unknown_case():
    with pytest.raises(DomainError):
        run_appendix("x4")
