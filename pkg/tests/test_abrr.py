import cmath
import random

import pytest

from dynqg.abrr import (
    abrr_operator,
    closed_form_report,
    constant,
    curly_J,
    gauge_dynamical,
    insert_shift,
    invert_dynamical,
    random_dynamical_gauge,
    shift_apply,
    sl2_oracle,
    solve_abrr,
    verify_dynamical_twist,
    verify_shifted_twist,
)
from dynqg.errors import NonGenericLambda, NotUnitriangular
from dynqg.scalars import LambdaParam
from dynqg.uqg import build_uq


def numeric(x, ell):
    z = cmath.exp(2j * cmath.pi / ell)
    return sum(c * z ** i for i, c in enumerate(x.num)) / x.den


def ef_key(U, beta, eta):
    # (E (x) F)(P_beta (x) P_eta) = P_{beta-1} E (x) F P_eta
    return (U.index[(0, (beta - 1) % U.ell, 1)], U.index[(1, eta, 0)])


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_solver_matches_closed_form(ell):
    U = build_uq("A1", ell)
    L = LambdaParam([2])
    J = solve_abrr(U, L)
    for lam in U.torus.elements:
        assert J(lam) == sl2_oracle(U, L, lam)


def test_degree_one_against_complex_evaluation(U3, J3):
    q = cmath.exp(2j * cmath.pi / 3)
    c1 = 1 / q - q
    for lam in range(3):
        for beta in range(3):
            for eta in range(3):
                expected = c1 * 2 * q ** (2 * lam) / (1 - 2 * q ** (2 * lam + 2 - 2 * beta + 2 * eta))
                got = J3((lam,)).terms[ef_key(U3, beta, eta)]
                assert abs(numeric(got, 3) - expected) < 1e-12


def test_frozen_coefficients(U3, J3):
    assert J3((0,)).terms[ef_key(U3, 0, 0)].to_record() == {"num": [-10, -8], "den": 7}
    assert J3((1,)).terms[ef_key(U3, 0, 1)].to_record() == {"num": [2, -2], "den": 1}


def test_fixed_point_of_both_operators(U3, J3, lam2):
    for lam in U3.torus.elements:
        assert abrr_operator(U3, J3(lam), lam, lam2, "L2") == J3(lam)
        assert abrr_operator(U3, J3(lam), lam, lam2, "R2") == J3(lam)
        assert U3.is_zero_weight(J3(lam))


def test_non_generic_lambda():
    U = build_uq("A1", 3)
    with pytest.raises(NonGenericLambda):
        solve_abrr(U, LambdaParam([1]))
    with pytest.raises(NonGenericLambda):
        sl2_oracle(U, LambdaParam([1]), (0,))


def test_shifted_twist_ell3(J3, lam2):
    report = verify_shifted_twist(J3, lam2)
    assert report.passed, report.failures()


def test_dynamical_twist_ell3(JJ3):
    report = verify_dynamical_twist(JJ3)
    assert report.passed, report.failures()


def test_closed_forms(U3, J3, lam2):
    report = closed_form_report(U3, lam2, J3)
    assert report.passed, report.failures()
    # the computed C_{0,delta} carries 1 (x) K^-2, not K^2 (x) 1
    assert report.get("C_0d_closed_form").detail["forms"] == {"K2_x_1": False, "1_x_Kinv2": True}


def test_inverse_is_two_sided(U3, J3):
    inv = invert_dynamical(J3)
    H = U3.hopf
    for lam in U3.torus.elements:
        assert H.mul(J3(lam), inv(lam)) == H.unit_tensor(2)
        assert H.mul(inv(lam), J3(lam)) == H.unit_tensor(2)


def test_inverse_needs_unitriangular(U3):
    H = U3.hopf
    x = constant(U3, H.unit_tensor(2).scale(U3.field.zero) + H.tensor(U3.E(), U3.F()))
    with pytest.raises(NotUnitriangular):
        invert_dynamical(x)


def test_shift_apply_identity(J3):
    assert shift_apply(J3, (0, 0)) == J3


def test_insert_shift_slot_sum(U3, J3):
    # (id (x) id (x) eps) removes the inserted P_mu and sums over mu; for lam = 0 and sign +1
    # the P_0 component is J(0) itself
    U = U3
    x = insert_shift(J3, (0,), 2, +1)
    p0 = U.index[(0, 0, 0)]
    zero_part = {k[:2]: v for k, v in x.terms.items() if k[2] == p0}
    assert zero_part == dict(J3((0,)).terms)


def test_curly_J_is_a_dynamical_twist_at_ell5(U5, lam2):
    J = solve_abrr(U5, lam2)
    assert verify_dynamical_twist(curly_J(J)).passed


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gauge_keeps_dynamical_twist(U3, JJ3, seed):
    x = random_dynamical_gauge(U3, random.Random(seed))
    Jx, Jx_inv = gauge_dynamical(JJ3, x)
    report = verify_dynamical_twist(Jx, instance=f"gauge{seed}", inverse=Jx_inv)
    assert report.passed, report.failures()
