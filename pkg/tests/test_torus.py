from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynqg.errors import NonInvertibleForm
from dynqg.torus import (
    TorusAlgebraElement,
    TorusGroup,
    TorusTensor,
    group_element,
    idempotents,
    invert_torus_tensor,
    omega,
)
from dynqg.uqg import build_uq

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]


@pytest.fixture(params=[(A1, 3), (A1, 5), (A2, 5)])
def torus(request):
    form, ell = request.param
    return TorusGroup(form, ell)


def test_idempotents_are_orthogonal_and_complete(torus):
    ps = idempotents(torus)
    f = torus.field
    total = TorusAlgebraElement(torus, "group", {})
    for a, pa in ps.items():
        for b, pb in ps.items():
            prod = pa * pb
            assert prod == (pa if a == b else TorusAlgebraElement(torus, "group", {}))
        total = TorusAlgebraElement(torus, "group", {**{k: total.coeffs.get(k, f.zero) + pa.coeffs.get(k, f.zero)
                                                        for k in set(total.coeffs) | set(pa.coeffs)}})
    assert total == group_element(torus, torus.zero)


def test_group_element_eigenvalues(torus):
    # K_gamma P_beta = q^{-(beta, gamma)} P_beta
    ps = idempotents(torus)
    f = torus.field
    for gamma in torus.elements[:4]:
        k = group_element(torus, gamma)
        for beta, p in ps.items():
            expected = TorusAlgebraElement(torus, "idempotent", {beta: f.q_power(-torus.pair(beta, gamma))})
            assert k * p == expected


def test_fourier_round_trip(torus):
    f = torus.field
    x = TorusAlgebraElement(torus, "group", {v: f.from_int(i + 1) for i, v in enumerate(torus.elements)})
    assert x.convert("idempotent").convert("group") == x


def test_p0_in_group_basis_is_average():
    # P_0 = (1/3)(K_0 + K_1 + K_2) at ell = 3
    torus = TorusGroup(A1, 3)
    p0 = idempotents(torus)[(0,)]
    third = torus.field.from_rational(Fraction(1, 3))
    assert p0.coeffs == {(0,): third, (1,): third, (2,): third}


def test_omega_is_sum_of_p_tensor_k(torus):
    f = torus.field
    comps = {(b, h): f.q_power(-torus.pair(b, h)) for b in torus.elements for h in torus.elements}
    assert omega(torus) == TorusTensor(torus, 2, comps)


def test_omega_matches_quantum_group_omega():
    U = build_uq("A1", 5)
    assert U.torus_tensor(omega(U.torus)) == U.omega()


@settings(max_examples=25, deadline=None)
@given(data=st.lists(st.integers(-4, 4), min_size=9, max_size=9))
def test_torus_tensor_inverse(data):
    torus = TorusGroup(A1, 3)
    f = torus.field
    comps = {}
    for i, (a, b) in enumerate((a, b) for a in torus.elements for b in torus.elements):
        comps[(a, b)] = f.from_int(data[i]) + f.q_power(i)
    x = TorusTensor(torus, 2, comps)
    if all(comps.values()):
        assert x * invert_torus_tensor(x) == TorusTensor.one(torus, 2)


def test_shift_is_translation():
    torus = TorusGroup(A1, 5)
    x = TorusTensor.monomial(torus, [(1,), (2,)])
    y = x.shift([(1,), (0,)])
    for (b, h), v in y.comp.items():
        assert v == x.comp[(torus.sub(b, (1,)), h)]


def test_form_must_be_invertible_mod_ell():
    with pytest.raises(NonInvertibleForm):
        TorusGroup(A2, 3)
