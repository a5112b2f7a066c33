import pytest

from dynqg.bd import (
    _det,
    b_closed_form,
    bd_build,
    degree_one_solve,
    lovely_pattern,
    matrix_44_check,
    omega_full,
    omega_l,
    omega_l_perp,
    omega_l_symmetry,
    pattern_equivalence,
    triple_preset,
    z_equation,
)
from dynqg.errors import InvalidSpec, NotInnerProductPreserving
from dynqg.scalars import LambdaParam, make_field


@pytest.fixture(scope="module")
def swap5():
    return triple_preset("swap", "A2", 5)


def test_swap_triple_data(swap5):
    assert swap5.orbits == [(0, 1)]
    assert swap5.order == 2
    assert [tuple(v) for v in swap5.L] == [(1, 1)]
    assert [tuple(v) for v in swap5.L_perp] == [(-1, 1)]
    assert (swap5.n1, swap5.n2) == (1, 2)
    assert swap5.is_automorphism


def test_id_triple_has_singleton_orbits():
    t = triple_preset("id", "A2", 5)
    assert t.orbits == [(0,), (1,)]


@pytest.mark.parametrize("name", ["id", "swap"])
def test_lattice_identities(name):
    t = triple_preset(name, "A2", 5)
    assert omega_l_symmetry(t)
    assert z_equation(t)
    assert omega_l(t) * omega_l_perp(t) == omega_full(t)


def test_bd_build_rejections():
    with pytest.raises(InvalidSpec):
        bd_build((0,), (1,), {0: 0}, "A2", 5)
    with pytest.raises(InvalidSpec):
        bd_build((0, 3), (0, 3), {0: 0, 3: 3}, "A2", 5)
    with pytest.raises(NotInnerProductPreserving):
        bd_build((0, 1), (0, 2), {0: 0, 1: 2}, "A3", 5)
    with pytest.raises(InvalidSpec):
        triple_preset("rotate", "A2", 5)


@pytest.mark.parametrize("name", ["id", "swap"])
def test_degree_one_solution_matches_closed_form(name):
    t = triple_preset(name, "A2", 5)
    L = LambdaParam([2, 2])
    for lam in t.T_L.elements[:2]:
        solved = degree_one_solve(t, L, lam)
        for i in range(2):
            for j in range(2):
                assert solved[(i, j)] == b_closed_form(t, L, lam, i, j)


def test_lovely_pattern_determinant():
    f = make_field(5)
    for n in (1, 2, 3):
        for lt in (f.from_rational(2), f.q, f.q + f.one):
            assert _det(lovely_pattern(n, lt, f), f) == (f.one - lt) ** (n - 1)


def test_pattern_equivalence_recovers_scalings():
    f = make_field(5)
    lt = f.q_power(2)
    P = lovely_pattern(2, lt, f)
    d1, d2 = [f.from_rational(3), f.q], [f.q_power(3), f.from_rational(-2)]
    # swap the rows, then rescale
    M = [[d1[r] * P[1 - r][c] * d2[c] for c in range(2)] for r in range(2)]
    found = pattern_equivalence(M, lt, f)
    assert found is not None
    assert found[0] == f.one - lt


def test_matrix_check_swap_single_lambda(swap5):
    report = matrix_44_check(swap5, LambdaParam([2, 2]), lambdas=[swap5.T_L.elements[1]])
    assert report.passed, report.failures()
    assert report.get("blocks_invertible").detail["blocks"] == 2 * 625
    det = report.get("pattern_determinant").detail
    # orbit length 2: (1 - Lt) and (Lt - 1) differ by a sign on every block
    assert det["blocks_with_orbit_gt_1"] == 1250
    assert det["matches_Lambda_minus_1_form"] == 0
