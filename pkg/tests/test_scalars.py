from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynqg.errors import DivisionByZero, EvenOrSmallEll
from dynqg.scalars import LambdaParam, genericity_check, make_field

ELLS = [3, 5, 7]
coeffs = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7), min_size=1, max_size=8)


def scalar(field, cs):
    return field.from_coeffs(cs)


@pytest.mark.parametrize("ell", [1, 2, 4, 10])
def test_bad_ell_rejected(ell):
    with pytest.raises(EvenOrSmallEll):
        make_field(ell)


@pytest.mark.parametrize("ell", ELLS)
def test_q_is_primitive_root_of_unity(ell):
    f = make_field(ell)
    assert f.q_power(ell) == f.one
    assert all(f.q_power(k) != f.one for k in range(1, ell))
    # 1 + q + ... + q^(ell-1) = 0
    total = f.zero
    for k in range(ell):
        total = total + f.q_power(k)
    assert total == f.zero


@pytest.mark.parametrize("ell", ELLS)
@settings(max_examples=40, deadline=None)
@given(a=coeffs, b=coeffs, c=coeffs)
def test_field_axioms(ell, a, b, c):
    f = make_field(ell)
    x, y, z = scalar(f, a), scalar(f, b), scalar(f, c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == f.zero
    if y:
        assert (x / y) * y == x
        assert y * y.inverse() == f.one


@pytest.mark.parametrize("ell", ELLS)
@settings(max_examples=40, deadline=None)
@given(a=coeffs)
def test_record_round_trip(ell, a):
    f = make_field(ell)
    x = scalar(f, a)
    assert f.from_record(x.to_record()) == x


@settings(max_examples=50, deadline=None)
@given(r=st.fractions(min_value=-100, max_value=100, max_denominator=50))
def test_rational_round_trip(r):
    f = make_field(5)
    assert f.from_rational(r).to_rational() == r


def test_division_by_zero():
    f = make_field(3)
    with pytest.raises(DivisionByZero):
        f.one / f.zero


def test_q_integer_values():
    f = make_field(3)
    # [2]_q = q + q^-1 = -1 for a primitive cube root
    assert f.q_int(2) == f.from_int(-1)
    # [3]_q = 0 at ell = 3
    assert f.q_int(3) == f.zero


def test_genericity():
    assert genericity_check(LambdaParam([2]), [(1,), (2,)], 1, 3) == (True, None)
    assert genericity_check(LambdaParam([1]), [(1,)], 1, 3) == (False, (1,))
    # -1 is a root of unity of order 2, caught once the exponent is even
    assert genericity_check(LambdaParam([-1]), [(1,)], 2, 3)[0] is False
    assert genericity_check(LambdaParam([-1]), [(1,)], 1, 3)[0] is True


def test_lambda_param_power():
    L = LambdaParam([2, Fraction(1, 3)])
    assert L.power((2, -1)) == 12
    with pytest.raises(ValueError):
        LambdaParam([0])
