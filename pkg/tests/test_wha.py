import random

import pytest

from dynqg.construction import end_A_wha
from dynqg.dual import dual_wha
from dynqg.errors import NotAGroupoid
from dynqg.groupoid import groupoid_fixture
from dynqg.tensor import SparseTensor
from dynqg.torus import TorusGroup
from dynqg.twist import check_morphism, trivial_twist, verify_twist
from dynqg.verify import counital_data, verify_axioms
from dynqg.wha import tensor_product


def test_groupoid_algebra_axioms():
    kG = groupoid_fixture(3, group_order=2)
    report = verify_axioms(kG)
    assert report.passed, report.failures()


def test_groupoid_target_counit_is_g_g_inverse():
    kG = groupoid_fixture(3, group_order=2)
    for i, (s, t, g) in enumerate(kG.labels):
        x = kG.basis_element(i)
        ident_t = kG.basis_element(kG.index[(t, t, 0)])
        ident_s = kG.basis_element(kG.index[(s, s, 0)])
        assert kG.eps_t(x) == ident_t == kG.mul(x, kG.antipode(x))
        assert kG.eps_s(x) == ident_s == kG.mul(kG.antipode(x), x)


def test_dual_groupoid_algebra_axioms():
    dual = dual_wha(groupoid_fixture(2, group_order=3))
    report = verify_axioms(dual)
    assert report.passed, report.failures()
    assert not report.get("is_ordinary_hopf_flag").detail["value"]


def test_groupoid_validation():
    with pytest.raises(NotAGroupoid):
        groupoid_fixture(2, arrows=[(0, 0, 0), (1, 1, 0), (0, 1, 0)])


def test_end_A_axioms_and_counital_subalgebra():
    torus = TorusGroup([[2]], 3)
    E = end_A_wha(torus)
    assert E.dim == 9
    assert verify_axioms(E).passed
    data, report = counital_data(E, n_samples=0)
    assert report.passed
    assert len(data.target_basis) == 3
    # eps_t(E_{lam mu}) = E_{lam lam}
    n = torus.size
    for i in range(E.dim):
        lam = i // n
        assert E.eps_t(E.basis_element(i)) == E.basis_element(lam * n + lam)
    # Delta(1) = sum E_{lam lam} (x) E_{lam lam}
    assert E.delta_one() == SparseTensor(2, {(a * n + a, a * n + a): torus.field.one for a in range(n)})


def test_end_A_is_the_pair_groupoid():
    torus = TorusGroup([[2]], 3)
    E = end_A_wha(torus)
    kG = groupoid_fixture(3)
    n = torus.size

    def phi(x):
        # E_{lam mu} is the arrow mu -> lam
        return SparseTensor(1, {(kG.index[(k % n, k // n, 0)],): v for (k,), v in x.terms.items()})

    samples = [E.basis_element(i) for i in range(E.dim)]
    assert check_morphism(phi, E, kG, samples).passed


def test_tensor_product_of_weak_hopf_algebras():
    H = tensor_product(groupoid_fixture(2), dual_wha(groupoid_fixture(2)))
    assert H.dim == 16
    assert verify_axioms(H).passed


def test_trivial_twist():
    kG = groupoid_fixture(2, group_order=2)
    assert verify_twist(kG, trivial_twist(kG)).passed


def test_sampled_mode_uses_generators():
    kG = groupoid_fixture(4, group_order=3)
    report = verify_axioms(kG, threshold=10, n_random=8)
    assert report.passed
    assert report.get("sample_policy").detail == {"full_basis": False, "size": kG.dim + 8}
    assert report.get("delta_multiplicative").detail["pairs"] == "generators"
