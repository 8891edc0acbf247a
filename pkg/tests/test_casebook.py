import json

import pytest

from planecc.casebook import (
    AGREE,
    CASE_TABLE,
    CASES,
    DISAGREE,
    FIXTURES,
    FixtureId,
    classify_case,
    evaluate_conditions,
    family_of,
    known_cc_family,
    paper_fixture,
    verify_paper,
)
from planecc.cli import emit_report
from planecc.config import AnalysisConfig
from planecc.geometry import PlaneSymmetricMetric
from planecc.symexpr import TriState, parse

Z, N = TriState.ZERO, TriState.NONZERO


@pytest.fixture(scope="module")
def report(claims_report):
    return claims_report


def test_table_shape():
    assert [r.case for r in CASE_TABLE] == list(range(1, 29))
    assert all(r.rank == 3 for r in CASE_TABLE[:13])
    assert all(r.rank == 1 for r in CASE_TABLE[13:])
    # the duplicate in case 28 is kept, with its annotation
    assert CASES[28].zero.count("CxCx") == 2 and "twice" in CASES[28].note
    assert CASES[17].note and CASES[19].note


def test_families():
    assert [family_of(c) for c in (1, 5, 6, 13, 14, 26, 27, 28)] == [1, 1, 6, 6, 14, 14, 27, 28]
    with pytest.raises(ValueError):
        family_of(29)


def test_conditions_case27():
    cv = evaluate_conditions(paper_fixture(FixtureId.Case27))
    for name in ("At", "Ax", "Bt", "Bx", "Cx", "CtCt"):
        assert cv[name] is Z
    assert cv["Ct"] is N


def test_conditions_case1():
    cv = evaluate_conditions(paper_fixture(FixtureId.Case1))
    for name in ("Ax", "Bt", "Cx"):
        assert cv[name] is Z
    for name in ("At", "Ct", "CtCt"):
        assert cv[name] is N


def test_conditions_flat():
    cv = evaluate_conditions(paper_fixture(FixtureId.Flat))
    assert all(s is Z for s in cv.states.values()) and cv.static


@pytest.mark.parametrize("fid", [f for f, s in FIXTURES.items() if s.cases])
def test_fixture_satisfies_its_printed_conditions(fid):
    cv = evaluate_conditions(paper_fixture(fid))
    for case in FIXTURES[fid].cases:
        assert CASES[case].failures(cv) == []


@pytest.mark.parametrize("fid,case", [
    (FixtureId.Case6, 6), (FixtureId.Case14, 14), (FixtureId.Case27, 27), (FixtureId.Case28, 28),
])
def test_classify_case_includes_own_case(fid, case):
    m = classify_case(paper_fixture(fid))
    assert case in m.cases and m.label == ",".join(map(str, m.cases))
    assert m.rank == CASES[case].rank


def test_case1_fixture_lands_in_family_one():
    # B = 0 after rescaling x, so B_x != 0 of the first printed case cannot hold
    m = classify_case(paper_fixture(FixtureId.Case1))
    assert m.cases == [2] and m.families == [1] and m.rank == 3


def test_static_and_unclassified():
    static = PlaneSymmetricMetric(parse("x"), parse("x^2"), parse("2*x"))
    m = classify_case(static)
    assert m.static and m.label == "Static" and not m.cases
    nonstatic = PlaneSymmetricMetric(parse("-t"), parse("1"), parse("2"))
    assert not classify_case(nonstatic).static
    g4 = classify_case(paper_fixture(FixtureId.GenericRank4))
    assert g4.unclassified and g4.label == "Unclassified" and g4.diagnostics


def test_known_families():
    assert known_cc_family(1)[0].expected == "proper_cc"
    assert [m.expected for m in known_cc_family(6)][-1] == "not_cc"
    assert known_cc_family(27)[0].field.name == "(t^2, t*x, 0, 0)"
    with pytest.raises(ValueError):
        known_cc_family(2)


def test_claim_verdicts(report):
    assert len(report.claims) == 58
    bad = report.disagreements
    assert len(bad) == 1
    claim = bad[0]
    assert claim.fixture == "Case28" and claim.verdict == DISAGREE
    assert claim.computed == "proper_cc" and claim.residual <= 1e-12 and claim.point
    for fixture in ("Case1", "Case6", "Case14", "Case27"):
        assert all(c.verdict == AGREE for c in report.claims if c.fixture == fixture)


def test_case28_kernel_claims_agree(report):
    kernel = [c for c in report.claims if c.fixture == "Case28" and "covariantly" in c.claim]
    assert kernel and all(c.verdict == AGREE for c in kernel)


def test_advisory_and_corrections(report):
    assert any("no proper CC possible" in a for a in report.advisories)
    g4 = next(f for f in report.fixtures if f.fixture == "GenericRank4")
    assert g4.rank >= 4 and g4.advisories
    assert all(not f.advisories for f in report.fixtures if f.rank <= 3)
    assert any("alpha4" in c for c in report.corrections)


def test_claims_deterministic(report):
    again = verify_paper(AnalysisConfig(seed=42))
    assert emit_report(again.as_dict()) == emit_report(report.as_dict())
    json.loads(emit_report(report.as_dict()))
