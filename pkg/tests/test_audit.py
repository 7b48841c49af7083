from fractions import Fraction

import pytest

from wienerint.audit import (
    audit_battery,
    audit_family,
    audit_gluing_b1_b2,
    audit_gluing_cross,
    audit_gluing_shift,
    audit_increment,
    audit_s_offset,
    audit_x_step,
    default_grid,
    fit_closed_form,
)
from wienerint.caterpillar import CaterpillarSpec, Family, formula_value
from wienerint.errors import InvalidGrid, VerificationFailure


def test_empty_or_mixed_grids_are_rejected():
    with pytest.raises(InvalidGrid):
        audit_family(Family.B1, [])
    with pytest.raises(InvalidGrid):
        audit_family(Family.B1, [CaterpillarSpec(Family.B2, 20, 4, 1)])
    with pytest.raises(InvalidGrid):
        audit_increment(Family.B1, default_grid(Family.B1, "A"))
    with pytest.raises(InvalidGrid):
        default_grid(Family.B1, "C")


def test_b1_closed_form_fails_with_concrete_counterexamples():
    report = audit_family(Family.B1, default_grid(Family.B1, "A"))
    assert report.verdict == "FAILS"
    bad = report.counterexample
    assert (bad.spec.n, bad.spec.d, bad.spec.x) == (18, 4, 1)
    assert bad.formula == 1080 and bad.direct == 633 and bad.delta == 447
    fractional = next(
        row for row in report.rows if (row.spec.n, row.spec.d, row.spec.x) == (20, 5, 2)
    )
    assert fractional.formula == Fraction(4393, 3)
    assert fractional.direct == 841


def test_b2_closed_form_holds_including_handchecked_points():
    report = audit_family(Family.B2, default_grid(Family.B2, "A"))
    assert report.verdict == "HOLDS"
    checked = {
        (row.spec.n, row.spec.d, row.spec.x): row for row in report.rows
    }
    assert checked[(20, 4, 1)].formula == checked[(20, 4, 1)].direct == 841
    assert checked[(20, 5, 1)].formula == checked[(20, 5, 1)].direct == 841


@pytest.mark.parametrize("family", [Family.G1, Family.G2, Family.G3, Family.G4])
def test_increments_hold(family):
    report = audit_increment(family, default_grid(family, "A"))
    assert report.verdict == "HOLDS"
    assert len(report.rows) > 50


@pytest.mark.parametrize(
    "family,verdict",
    [(Family.G1, "HOLDS"), (Family.G2, "FAILS"), (Family.G3, "HOLDS"), (Family.G4, "HOLDS")],
)
def test_x_step_verdicts(family, verdict):
    report = audit_x_step(family, default_grid(family, "A"))
    assert report.verdict == verdict


def test_g2_x_step_counterexample_matches_corrected_form():
    report = audit_x_step(Family.G2, default_grid(Family.G2, "A"))
    for row in report.rows:
        corrected = Fraction(8 * row.spec.d + 4 * row.spec.x - 8)
        assert row.direct == corrected


@pytest.mark.parametrize("family", [Family.G1, Family.G2, Family.G3, Family.G4])
def test_s_offsets_hold(family):
    report = audit_s_offset(family, default_grid(family, "A"))
    assert report.verdict == "HOLDS"


def test_gluing_identities_hold():
    assert audit_gluing_b1_b2(range(18, 41, 2)).verdict == "HOLDS"
    assert audit_gluing_shift(Family.G3, range(21, 42, 2)).verdict == "HOLDS"
    assert audit_gluing_shift(Family.G4, range(21, 42, 2)).verdict == "HOLDS"
    assert audit_gluing_cross(range(21, 42, 2)).verdict == "HOLDS"
    with pytest.raises(InvalidGrid):
        audit_gluing_shift(Family.B1, range(21, 24, 2))


def test_battery_verdicts_are_stable():
    for entry in audit_battery("even") + audit_battery("odd"):
        assert entry.stable, entry.identity


def test_report_serialization():
    report = audit_family(Family.B1, default_grid(Family.B1, "A"))
    payload = report.to_json_dict()
    assert payload["verdict"] == "FAILS"
    assert payload["counterexample"]["direct"] == 633
    text = report.to_text()
    assert "B1: FAILS" in text and "1080" in text


def test_fitted_b2_matches_printed_coefficients():
    form = fit_closed_form(Family.B2)
    printed = {
        (2, 1, 0): Fraction(1, 2),
        (2, 0, 0): Fraction(1),
        (1, 1, 0): Fraction(-2),
        (1, 0, 0): Fraction(-2),
        (0, 3, 0): Fraction(-8, 3),
        (0, 1, 0): Fraction(32, 3),
        (0, 0, 0): Fraction(-5),
        (0, 0, 1): Fraction(8),
        (0, 1, 1): Fraction(-8),
        (0, 0, 2): Fraction(-2),
    }
    assert form.term_dict() == printed
    assert form.verified_points >= 20


def test_fitted_b1_differs_from_printed_form():
    form = fit_closed_form(Family.B1)
    assert form.verified_points >= 20
    spec = CaterpillarSpec(Family.B1, 18, 4, 1)
    assert form.evaluate((18, 4, 1)) == 633
    assert formula_value(spec) == 1080


@pytest.mark.parametrize("family", [Family.G1, Family.G2, Family.G3, Family.G4])
def test_fitted_increments_verify(family):
    form = fit_closed_form(family)
    assert form.target == "increment"
    assert form.verified_points >= 10


def test_underfitting_is_detected():
    with pytest.raises(VerificationFailure):
        fit_closed_form(Family.B2, caps={"d": 1})
    with pytest.raises(InvalidGrid):
        fit_closed_form(Family.B2, caps={"d": 9})
    with pytest.raises(InvalidGrid):
        fit_closed_form(Family.B2, caps={"q": 2})


def test_fitted_form_renders_exactly():
    form = fit_closed_form(Family.B2)
    text = form.to_text()
    assert "(1/2)*n^2*d" in text
    assert "(-8/3)*d^3" in text
    assert "-2*x^2" in text
