"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also written with capture disabled so plain ``pytest -v`` shows them.
"""
import random
import time

import pytest

from dynqg.abrr import (
    abrr_operator,
    curly_J,
    gauge_dynamical,
    random_dynamical_gauge,
    sl2_oracle,
    solve_abrr,
    verify_dynamical_twist,
    verify_shifted_twist,
)
from dynqg.algebroid import algebroid_from_wha
from dynqg.bd import matrix_44_check, omega_full, omega_l, omega_l_perp, slot_transform_group, triple_preset
from dynqg.construction import DualD, build_HJ, duality_checks, gauge_equivalence, rank_and_iso, twisted_R
from dynqg.dual import dual_wha
from dynqg.groupoid import groupoid_fixture
from dynqg.scalars import LambdaParam, make_field
from dynqg.torus import TorusGroup, TorusTensor, omega
from dynqg.twist import check_twisted_counital
from dynqg.uqg import build_uq
from dynqg.verify import verify_axioms

INFORMATIONAL = {"S_D_vs_plain_antipode", "K_bar_vs_m_id_S_J_inverse"}


@pytest.fixture
def line(capsys):
    def emit(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        return ok
    return emit


def failed(report):
    return [f"{r.instance}/{r.check}" for r in report.failures()]


@pytest.fixture(scope="module")
def bd_report():
    triple = triple_preset("swap", "A2", 5)
    start = time.perf_counter()
    report = matrix_44_check(triple, LambdaParam([2, 2]))
    return report, time.perf_counter() - start


def test_01_oracle_equivalence(line):
    L = LambdaParam([2])
    bad = []
    for ell in (3, 5, 7):
        U = build_uq("A1", ell)
        J = solve_abrr(U, L)
        bad += [(ell, lam) for lam in U.torus.elements if J(lam) != sl2_oracle(U, L, lam)]
    assert line("1 oracle equivalence A1 ell=3,5,7 Lambda=2", not bad, f"exact equality, mismatches={bad}")


def test_02_fixed_point_certificates(line, U3, J3, lam2):
    bad = []
    for lam in U3.torus.elements:
        x = J3(lam)
        if abrr_operator(U3, x, lam, lam2, "L2") != x or abrr_operator(U3, x, lam, lam2, "R2") != x:
            bad.append((lam, "fixed"))
        if not U3.is_zero_weight(x):
            bad.append((lam, "weight"))
    assert line("2 A2_L, A2_R fix J and J has zero weight (ell=3)", not bad, f"exact, failures={bad}")


def test_03_twist_identities(line, lam2):
    out = []
    elapsed = {}
    for ell in (3, 5):
        start = time.perf_counter()
        J = solve_abrr(build_uq("A1", ell), lam2)
        out += failed(verify_shifted_twist(J, lam2, instance=f"J_ell{ell}"))
        out += failed(verify_dynamical_twist(curly_J(J), instance=f"curlyJ_ell{ell}"))
        elapsed[ell] = time.perf_counter() - start
    ok = not out and elapsed[5] <= 300
    assert line("3 shifted and dynamical twist identities ell=3,5", ok,
                f"exact, failures={out}, ell=5 took {elapsed[5]:.1f}s (limit 300s)")


def test_04_twist_axioms_and_lemmas(line, tw3):
    report = tw3.twist_checks()
    report.extend(tw3.lemma_checks())
    ok = report.passed and len(report.results) >= 4 and tw3.v_formula()
    assert line("4 twist axioms for Theta and F, four lemma identities (ell=3)", ok,
                f"exact, {len(report.results)} checks, failures={failed(report)}")


def test_05a_HJ_axioms_full_basis(line, tw3):
    report = verify_axioms(tw3.HJ)
    report.extend(check_twisted_counital(tw3.H, tw3.HJ, tw3.pair))
    ok = report.passed and tw3.HJ.dim == 243
    assert line("5a H_J axioms on the full basis (ell=3, dim 243) + twisted counital maps", ok,
                f"exact, dim={tw3.HJ.dim}, failures={failed(report)}")


def test_05b_HJ_axioms_sampled_ell5(line, U5, lam2):
    tw5 = build_HJ(curly_J(solve_abrr(U5, lam2)), check=False)
    start = time.perf_counter()
    report = verify_axioms(tw5.HJ, n_random=64, seed=0)
    report.extend(check_twisted_counital(tw5.H, tw5.HJ, tw5.pair))
    assert line("5b H_J axioms at ell=5: generators + 64 random samples, twisted counital maps", report.passed,
                f"exact, dim={tw5.HJ.dim}, {time.perf_counter() - start:.0f}s, failures={failed(report)}")


def test_06_quasitriangular(line, tw3):
    _, report = twisted_R(tw3)
    assert line("6 R(lambda) quasitriangular incl. QYBE (ell=3)", report.passed,
                f"exact, {len(report.results)} checks, failures={failed(report)}")


def test_07_duality(line, tw3):
    report = duality_checks(tw3, DualD(tw3))
    required = [r for r in report.results if r.check not in INFORMATIONAL]
    bad = [r.check for r in required if r.status != "pass"]
    rank = report.get("pairing_rank").detail.get("rank")
    assert line("7 D_J is the transpose of H_J with opposite multiplication, pairing rank 243", not bad,
                f"exact, pairing rank={rank}, failures={bad}")


def test_08_rank_and_isomorphism(line, tw3):
    start = time.perf_counter()
    report, data = rank_and_iso(tw3)
    elapsed = time.perf_counter() - start
    ranks = {b[3] for b in data["blocks"]}
    ok = report.passed and len(data["blocks"]) == 27 and ranks == {9} and elapsed <= 600
    assert line("8 27 blocks of rank 9, rho rank 243, generator certificates", ok,
                f"exact, blocks={len(data['blocks'])}, ranks={sorted(ranks)}, "
                f"rho rank={report.get('rho_rank').detail['rank']}, {elapsed:.1f}s (limit 600s)")


def test_09_bd_blocks(line, bd_report):
    report, elapsed = bd_report
    blocks = report.get("blocks_invertible").detail["blocks"]
    assert line("9 BD A2 swap ell=5 Lambda=(2,2): blocks invertible, pattern-equivalent, det(pattern)=(1-Lt)^(n-1)",
                report.passed, f"exact, {blocks} blocks, {elapsed:.0f}s, failures={failed(report)}")


@pytest.mark.xfail(strict=True, reason="det of the pattern is (1 - Lt)^(n-1); for n = 2 the stated form differs by sign")
def test_09_literal_determinant_sign(line, bd_report):
    report, _ = bd_report
    det = report.get("pattern_determinant").detail
    ok = det["matches_Lambda_minus_1_form"] == det["blocks_with_orbit_gt_1"]
    line("9' normalized determinant literally (Lt-1)^(n-1)", ok,
         f"{det['matches_Lambda_minus_1_form']}/{det['blocks_with_orbit_gt_1']} blocks match; "
         f"all match (1-Lt)^(n-1) instead")
    assert ok


def test_10_groupoid_and_algebroid(line, tw3):
    kG = groupoid_fixture(3, group_order=2)
    reports = [verify_axioms(kG), verify_axioms(dual_wha(groupoid_fixture(2, group_order=3)))]
    eps_ok = all(kG.eps_t(kG.basis_element(i)) == kG.mul(kG.basis_element(i), kG.antipode(kG.basis_element(i)))
                 for i in range(kG.dim))
    _, alg = algebroid_from_wha(tw3.HJ)
    reports.append(alg)
    bad = [f for r in reports for f in failed(r)]
    assert line("10 kG, (kG)* axioms, eps_t(g)=g g^-1, algebroid_from_wha(H_J) at ell=3",
                not bad and eps_ok, f"exact, eps_t ok={eps_ok}, failures={bad}")


def test_11_gauges(line, U3, tw3):
    bad = []
    for seed in range(10):
        x = random_dynamical_gauge(U3, random.Random(seed))
        Jx, Jx_inv = gauge_dynamical(tw3.JJ, x)
        bad += failed(verify_dynamical_twist(Jx, instance=f"gauge{seed}", inverse=Jx_inv))
        tw_x = build_HJ(Jx, Jx_inv, check=False)
        bad += failed(gauge_equivalence(tw3, tw_x, x, instance=f"iso{seed}"))
    assert line("11 10 seeded gauges: J^x dynamical twist, H_{J^x} iso H_J by conjugation", not bad,
                f"exact, failures={bad}")


def test_12_property_suites(line):
    bad = []
    f = make_field(5)
    rng = random.Random(12)
    for _ in range(200):
        a, b, c = (f.from_coeffs([rng.randint(-4, 4) for _ in range(4)]) for _ in range(3))
        if (a + b) * c != a * c + b * c or (a * b) * c != a * (b * c):
            bad.append("field")
            break
        if a and a * a.inverse() != f.one:
            bad.append("inverse")
            break
    torus = TorusGroup([[2, -1], [-1, 2]], 5)
    om = omega(torus)
    if om.inverse() * om != TorusTensor.one(torus, 2):
        bad.append("omega_inverse")
    triple = triple_preset("swap", "A2", 5)
    if omega_l(triple) * omega_l_perp(triple) != omega_full(triple):
        bad.append("omega_L factorization")
    oml = omega_l(triple)
    if slot_transform_group(triple, oml, 0) != slot_transform_group(triple, oml, 1, inverse=True):
        bad.append("T+ x id = id x T-")
    for ell in (3, 5):
        U = build_uq("A1", ell)
        if U.torus_tensor(omega(U.torus)) != U.omega():
            bad.append(f"omega=sum P x K ell={ell}")
        wr = random.Random(ell)
        for _ in range(200):
            word = U.random_word(wr, length=wr.randint(1, 8))
            if U.normalize(word, "left") != U.normalize(word, "right"):
                bad.append(f"confluence ell={ell}")
                break
    assert line("12 scalars/torus properties, Omega = sum P x K, Omega_L Omega_L-perp = Omega, "
                "confluence on 200 words, (T+ x id)Omega_L = (id x T-)Omega_L", not bad, f"exact, failures={bad}")
