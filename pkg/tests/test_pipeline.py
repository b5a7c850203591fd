from __future__ import annotations

from fractions import Fraction

import pytest

from kkw.closed_forms import phi_case_form
from kkw.exact import I, GaussianRational
from kkw.jets import identity_jet, random_jjet, trivial_jet
from kkw.pipeline import CASES, CaseRunner, PipelineError, case_prefactor, phi_case, phi_total


def test_prefactors():
    assert case_prefactor("aI") == GaussianRational(-1)
    assert case_prefactor("aII") == GaussianRational(Fraction(-1, 2))
    assert case_prefactor("aIII") == GaussianRational(Fraction(-1, 2))
    assert case_prefactor("b") == -I
    assert case_prefactor("c") == -I


@pytest.mark.parametrize("n", [6, 8])
def test_trivial_jet_gives_zero(n):
    rep = phi_total(n, trivial_jet(n))
    assert all(rep.cases[c].result.q == 0 for c in CASES)


@pytest.mark.parametrize("n", [6, 8, 10])
def test_identity_jet_total_vanishes(n):
    assert phi_total(n, identity_jet(n)).total.q == 0


# frozen from the exact pipeline; the per-case closed forms agree
FROZEN_N6_SEED1_DIAGONAL = {"aI": 0, "aII": Fraction(15, 4), "aIII": Fraction(-25, 4), "b": Fraction(5, 4),
                            "c": Fraction(5, 4)}


def test_frozen_case_values():
    rep = phi_total(6, random_jjet(6, 1, "diagonal"))
    assert {c: rep.cases[c].result.q for c in CASES} == FROZEN_N6_SEED1_DIAGONAL


@pytest.mark.parametrize("profile", ["diagonal", "conjugated"])
def test_pipeline_equals_case_forms_n6(profile):
    for seed in range(3):
        jet = random_jjet(6, seed, profile)
        runner = CaseRunner(jet)
        for c in CASES:
            assert runner.run(c).result.q == phi_case_form(c, 6, jet).q


def test_odd_sphere_terms_reach_the_integrator():
    rep = phi_case("b", 6, random_jjet(6, 2, "conjugated"))
    assert rep.odd_terms_killed > 0


def test_results_are_real_and_json():
    rep = phi_total(6, random_jjet(6, 4, "conjugated"))
    js = rep.to_json()
    assert [c["case"] for c in js["cases"]] == list(CASES)
    for c in js["cases"]:
        assert "after_sphere" in c["intermediates"]


def test_scaling_is_linear_in_jet_derivatives():
    # with A fixed, every case is linear in (DA, h'): doubling both doubles each case
    jet = random_jjet(6, 5, "conjugated")
    one = phi_total(6, jet)
    two = phi_total(6, jet.scaled(2))
    zero = phi_total(6, jet.scaled(0))
    for c in CASES:
        assert two.cases[c].result.q == 2 * one.cases[c].result.q
        assert zero.cases[c].result.q == 0


def test_input_checks():
    with pytest.raises(PipelineError):
        phi_case("aI", 8, random_jjet(6, 0))
    with pytest.raises(PipelineError):
        CaseRunner(identity_jet(6)).run("zz")
    with pytest.raises(PipelineError):
        CaseRunner(identity_jet(4))
