from fractions import Fraction

import pytest

from ckdim.errors import InvalidParameterError, InvalidScenarioError, ModeUnavailableError
from ckdim.growth import POS, Comparison, Inconclusive
from ckdim.ledger import build_ledger
from ckdim.lie_closed import CurveShape
from ckdim.scenario import ASYMPTOTIC, CROSSOVER, Case1, Case2, Case3, Case4, Scenario
from ckdim.verifier import (
    NO_FINITENESS,
    PER_DEGREE,
    ChabautyParams,
    Crossover,
    Divergence,
    chabauty_check,
    growth_sum,
    restriction_params,
    unlikely_codim_check,
    verify_dimension_hypothesis,
)
from fixtures import CASE2_CROSSOVER, CASE3_FIXTURE, SCENARIO_MATRIX


def test_case2_crossover_fixture():
    verdict = verify_dimension_hypothesis(Scenario(CASE2_CROSSOVER, 1, CROSSOVER, 20))
    out = verdict.outcome
    assert isinstance(out, Crossover)
    assert out.n_min == 4
    assert out.ledger.codim_lower >= 1
    assert (out.ledger.local_total, out.ledger.selmer_upper) == (8, 6)
    assert out.holds_through_horizon


def test_case1_divergence_via_surd_base():
    verdict = verify_dimension_hypothesis(Scenario(Case1(CurveShape(2), 1, 2), mode=ASYMPTOTIC))
    cert = verdict.outcome.certificate
    assert cert.chain[0] == Comparison("2+sqrt(3)", "2", "base")
    assert cert.dominant.coeff == POS


def test_case1_noncompact_uses_b1():
    verdict = verify_dimension_hypothesis(Scenario(Case1(CurveShape(1, 2), 1, 1), mode=ASYMPTOTIC))
    assert verdict.outcome.certificate.chain[0] == Comparison("3", "1", "base")


def test_case4_divergence_via_degree():
    verdict = verify_dimension_hypothesis(Scenario(Case4(2, 1, 2), mode=ASYMPTOTIC))
    out = verdict.outcome
    assert isinstance(out, Divergence) and out.scale == PER_DEGREE
    assert out.certificate.chain[0] == Comparison("n^3", "n^2", "polydeg at base 1")


@pytest.mark.parametrize("gY", [2, 3, 4, 5])
def test_case4_degree_gap_for_every_genus(gY):
    out = verify_dimension_hypothesis(Scenario(Case4(gY, 1, 1), mode=ASYMPTOTIC)).outcome
    top = 2 * gY - 1
    assert out.certificate.dominant.polydeg == top
    assert out.certificate.chain[0].smaller == f"n^{max(2 * gY - 2, gY)}"


def test_minimality_and_ledger_invariant():
    for scenario in SCENARIO_MATRIX:
        if scenario.mode != CROSSOVER:
            continue
        out = verify_dimension_hypothesis(scenario).outcome
        if isinstance(out, Inconclusive):
            assert out.kind == "horizon-exhausted"
            assert max(out_value for out_value in _levels(scenario)) < scenario.target_codim
            continue
        assert out.ledger.codim_lower >= scenario.target_codim
        assert out.ledger == build_ledger(scenario.case, out.n_min)
        if out.n_min > 1:
            assert build_ledger(scenario.case, out.n_min - 1).codim_lower < scenario.target_codim


def _levels(scenario):
    return [build_ledger(scenario.case, N).codim_lower for N in range(1, scenario.horizon + 1)]


def test_monotone_in_target():
    previous = 0
    for target in range(1, 40):
        out = verify_dimension_hypothesis(Scenario(CASE2_CROSSOVER, target, CROSSOVER, 20)).outcome
        assert out.n_min >= previous
        previous = out.n_min


@pytest.mark.parametrize("case", [CASE2_CROSSOVER, Case2(4, 2, 3, 1), CASE3_FIXTURE, Case3(2, 3, 4)])
def test_crossover_asymptotic_consistency(case):
    asym = verify_dimension_hypothesis(Scenario(case, mode=ASYMPTOTIC, horizon=40)).outcome
    assert isinstance(asym, Divergence)
    cross = verify_dimension_hypothesis(Scenario(case, mode=CROSSOVER, horizon=40)).outcome
    assert isinstance(cross, Crossover)


def test_horizon_exhausted():
    out = verify_dimension_hypothesis(Scenario(CASE2_CROSSOVER, 10**9, CROSSOVER, 6)).outcome
    assert isinstance(out, Inconclusive) and out.kind == "horizon-exhausted"


def test_crossover_without_constants_is_unavailable():
    with pytest.raises(ModeUnavailableError):
        verify_dimension_hypothesis(Scenario(Case1(CurveShape(2), 1, 1)))
    with pytest.raises(ModeUnavailableError):
        verify_dimension_hypothesis(Scenario(Case4(3, 1, 1)))


def test_case2_asymptotic_constant_term():
    total, _ = growth_sum(Case2(3, 1, 2, 3))
    # weight-one row at its worst endpoint: (1 - R) * degF * (s - 1)
    assert total.terms[1].coeff == Fraction(-8)


def test_annotations():
    v = verify_dimension_hypothesis(Scenario(Case1(CurveShape(2), 1, 2), mode=ASYMPTOTIC))
    assert any("Fontaine-Mazur" in a and "Bloch-Kato" in a for a in v.annotations)
    v3 = verify_dimension_hypothesis(Scenario(CASE3_FIXTURE))
    assert any("n0 = 3" in a for a in v3.annotations)
    assert any("1-dimensional" in a for a in v3.annotations)
    for scenario in SCENARIO_MATRIX:
        notes = verify_dimension_hypothesis(scenario).annotations
        assert notes[-1] == NO_FINITENESS
        for note in notes:
            assert "finiteness of integral points is not" in note or "finite" not in note.lower()


def test_scenario_invariants():
    with pytest.raises(InvalidScenarioError):
        Case2(2, 1, 1, 0)
    with pytest.raises(InvalidScenarioError):
        Case2(3, 2, 1, 0)
    with pytest.raises(InvalidScenarioError):
        Case4(1, 1, 1)
    with pytest.raises(InvalidScenarioError):
        Scenario(CASE2_CROSSOVER, 0)
    with pytest.raises(InvalidScenarioError):
        Case1(CurveShape(1, 0), 1, 1)
    with pytest.raises(InvalidScenarioError):
        Case3(1, 1, 3, (0,))
    assert Scenario(Case2(3, 2, 3, 0)).target_codim == 2


@pytest.mark.parametrize(
    "g,d,r,delta,holds,slack",
    [(6, 3, 2, 0, True, 1), (2, 1, 3, 0, False, -2), (4, 2, 2, 0, True, 0)],
)
def test_chabauty_examples(g, d, r, delta, holds, slack):
    rep = chabauty_check(ChabautyParams(g, d, r, delta))
    assert (rep.holds, rep.slack) == (holds, slack)
    assert "does not follow" in rep.text or not rep.holds


def test_restriction_examples():
    assert restriction_params(2, 3, 2, 0) == ChabautyParams(6, 3, 2, 0)
    assert restriction_params(2, 1, 1, 0) == ChabautyParams(2, 1, 1, 0)
    assert restriction_params(3, 2, 3, 1) == ChabautyParams(6, 2, 3, 1)
    with pytest.raises(InvalidParameterError):
        restriction_params(1, 2, 0, 0)
    with pytest.raises(InvalidParameterError):
        ChabautyParams(1, 1, -1, 0)


def test_unlikely_codim_examples():
    assert unlikely_codim_check(1, 3, 1).triggers
    assert not unlikely_codim_check(2, 5, 1).triggers
    rep = unlikely_codim_check(3, 10, 3)
    assert rep.triggers and rep.codim_W_lower == 13 and rep.dim_W_upper == 0
    assert "zero-dimensional" in rep.text
    assert unlikely_codim_check(4, 5, 1).dim_W_upper == 3
    with pytest.raises(InvalidParameterError):
        unlikely_codim_check(1, 2, 3)
