import random

import pytest

from dynqg.abrr import gauge_dynamical, random_dynamical_gauge
from dynqg.algebroid import algebroid_from_wha
from dynqg.construction import (
    DualD,
    build_HJ,
    check_rank,
    duality_checks,
    end_A_wha,
    gauge_equivalence,
    rank_and_iso,
    twisted_R,
)
from dynqg.errors import RankDeficient
from dynqg.reports import Report
from dynqg.twist import check_twisted_counital
from dynqg.verify import verify_axioms


def test_dimensions(U3, tw3):
    assert tw3.H.dim == 9 * U3.dim == 243
    assert tw3.HJ.dim == 243


def test_lemma_identities(tw3):
    report = tw3.lemma_checks()
    assert report.passed, report.failures()
    assert len(report.results) == 4


def test_twist_axioms_theta_and_F(tw3):
    report = tw3.twist_checks()
    assert report.passed, report.failures()


def test_v_formula(tw3):
    assert tw3.v_formula()


def test_HJ_axioms_full_basis(tw3):
    report = verify_axioms(tw3.HJ)
    assert report.passed, report.failures()


def test_twisted_counital_closed_forms(tw3):
    report = check_twisted_counital(tw3.H, tw3.HJ, tw3.pair)
    assert report.passed, report.failures()


def test_quasitriangular(tw3):
    _, report = twisted_R(tw3)
    assert report.passed, report.failures()
    assert report.get("R_matches_display").status == "pass"


def test_rank_and_generators(tw3):
    report, data = rank_and_iso(tw3)
    assert report.passed, report.failures()
    assert len(data["blocks"]) == 27
    assert {b[3] for b in data["blocks"]} == {9}
    assert report.get("rho_rank").detail["rank"] == 243
    check_rank(report)


def test_check_rank_raises_on_failure():
    report = Report("x")
    report.add("rho_rank", False, 5)
    with pytest.raises(RankDeficient):
        check_rank(report)


def test_duality(tw3):
    report = duality_checks(tw3, DualD(tw3))
    required = [r for r in report.results if r.check not in ("S_D_vs_plain_antipode", "K_bar_vs_m_id_S_J_inverse")]
    assert all(r.status == "pass" for r in required), [r for r in required if r.status != "pass"]
    assert report.get("pairing_rank").status == "pass"


def test_opposite_sign_convention_breaks_multiplication(tw3):
    report = duality_checks(tw3, DualD(tw3, sign=-1), h_indices=range(0, 243, 17))
    assert report.get("mult_D_is_transposed_coproduct").status == "fail"


@pytest.mark.parametrize("seed", [0, 1])
def test_gauge_equivalence(U3, tw3, seed):
    x = random_dynamical_gauge(U3, random.Random(seed))
    Jx, Jx_inv = gauge_dynamical(tw3.JJ, x)
    tw_x = build_HJ(Jx, Jx_inv, check=False)
    report = gauge_equivalence(tw3, tw_x, x)
    assert report.passed, report.failures()


def test_end_A_is_a_weak_hopf_algebra(U3):
    report = verify_axioms(end_A_wha(U3.torus))
    assert report.passed, report.failures()


def test_algebroid_from_HJ(tw3):
    _, report = algebroid_from_wha(tw3.HJ)
    assert report.passed, report.failures()
