"""Twists of weak Hopf algebras, twisted structures and gauge transformations."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import BadGauge, TwistInvalid
from .reports import Report
from .tensor import SparseTensor
from .verify import counital_data
from .wha import WeakHopf, dict_of, with_comul


@dataclass
class TwistPair:
    theta: SparseTensor
    theta_bar: SparseTensor

    def swapped(self) -> "TwistPair":
        return TwistPair(self.theta_bar, self.theta)


def trivial_twist(H: WeakHopf) -> TwistPair:
    d1 = H.delta_one()
    return TwistPair(d1, d1)


def verify_twist(H: WeakHopf, tw: TwistPair, instance: str | None = None) -> Report:
    """Membership, counit and the four mixed coassociativity identities, all exact."""
    report = Report(instance or H.name)
    th, tb = tw.theta, tw.theta_bar
    d1 = H.delta_one()
    one = H.unit()

    start = time.perf_counter()
    ok = H.mul(d1, th) == th
    report.add("theta_in_delta1_HH", ok, None if ok else "Delta(1)Theta != Theta", _ms(start))
    ok = H.mul(tb, d1) == tb
    report.add("theta_bar_in_HH_delta1", ok, None if ok else "Theta_bar Delta(1) != Theta_bar")
    ok = H.mul(th, tb) == d1
    report.add("theta_theta_bar_is_delta1", ok, None if ok else H.mul(th, tb).first_difference(d1))

    start = time.perf_counter()
    bad = [name for name, value in (
        ("(eps x id)Theta", H.apply_counit(th, 0)),
        ("(id x eps)Theta", H.apply_counit(th, 1)),
        ("(eps x id)Theta_bar", H.apply_counit(tb, 0)),
        ("(id x eps)Theta_bar", H.apply_counit(tb, 1)),
    ) if value != one]
    report.add("twist_counit", not bad, bad or None, _ms(start))

    d_th_1 = H.apply_comul(th, 0)
    d_th_2 = H.apply_comul(th, 1)
    d_tb_1 = H.apply_comul(tb, 0)
    d_tb_2 = H.apply_comul(tb, 1)
    cases = {
        "twist_pp": (H.mul(d_th_1, th, (0, 1, 2), (0, 1), 3), H.mul(d_th_2, th, (0, 1, 2), (1, 2), 3)),
        "twist_mm": (H.mul(tb, d_tb_1, (0, 1), (0, 1, 2), 3), H.mul(tb, d_tb_2, (1, 2), (0, 1, 2), 3)),
        "twist_pm": (H.mul(d_tb_1, d_th_2), H.mul(th, tb, (0, 1), (1, 2), 3)),
        "twist_mp": (H.mul(d_tb_2, d_th_1), H.mul(th, tb, (1, 2), (0, 1), 3)),
    }
    for name, (lhs, rhs) in cases.items():
        start = time.perf_counter()
        ok = lhs == rhs
        report.add(name, ok, None if ok else lhs.first_difference(rhs), _ms(start))
    return report


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def twist_v(H: WeakHopf, tw: TwistPair) -> tuple[SparseTensor, SparseTensor]:
    """v = m(S x id)Theta and its inverse Theta_bar^(1) S(Theta_bar^(2))."""
    v = H.multiply_slots(H.apply_antipode(tw.theta, 0), 0)
    v_inv = H.multiply_slots(H.apply_antipode(tw.theta_bar, 1), 0)
    return v, v_inv


def apply_twist(H: WeakHopf, tw: TwistPair, name: str | None = None, check: bool = True) -> WeakHopf:
    """H_Theta: comultiplication Theta_bar Delta(h) Theta, antipode v^-1 S(h) v.

    With ``check`` the twist axioms are verified first (TwistInvalid on failure).
    The result carries ``twist``, ``v``, ``v_inv`` and ``parent`` attributes.
    """
    if check:
        report = verify_twist(H, tw)
        if not report.passed:
            raise TwistInvalid(f"twist fails {[r.check for r in report.failures()]}", witness=report.failures()[0].check)
    v, v_inv = twist_v(H, tw)
    if H.mul(v, v_inv) != H.unit() or H.mul(v_inv, v) != H.unit():
        raise TwistInvalid("v = m(S x id)Theta is not inverted by Theta_bar^(1) S(Theta_bar^(2))")
    th, tb = tw.theta, tw.theta_bar

    def comul(i):
        d = SparseTensor(2, {k: v for k, v in H.comul_basis(i).items()})
        return dict(H.mul(H.mul(tb, d), th).terms)

    def antipode(i):
        return dict_of(H.mul(H.mul(v_inv, SparseTensor(1, {(k,): c for k, c in H.antipode_basis(i).items()})), v))

    def antipode_inv(i):
        inner = H.mul(H.mul(v, H.basis_element(i)), v_inv)
        return dict_of(H.apply_antipode_inv(inner, 0))

    K = with_comul(H, name or f"{H.name}_twisted", comul, antipode, antipode_inv)
    K.twist = tw
    K.v = v
    K.v_inv = v_inv
    K.parent = H
    return K


def twisted_counital_maps(H: WeakHopf, tw: TwistPair, x: SparseTensor) -> tuple[SparseTensor, SparseTensor]:
    """(eps_t)_Theta(h) = eps(Theta^(1) h) Theta^(2), (eps_s)_Theta(h) = Theta_bar^(1) eps(h Theta_bar^(2))."""
    et = H.apply_counit(H.mul(tw.theta, x, (0, 1), (0,), 2), 0)
    es = H.apply_counit(H.mul(x, tw.theta_bar, (1,), (0, 1), 2), 1)
    return et, es


def check_twisted_counital(H: WeakHopf, K: WeakHopf, tw: TwistPair, instance: str | None = None) -> Report:
    """Compare the closed forms of the twisted counital maps with those of H_Theta on the full basis."""
    report = Report(instance or K.name)
    start = time.perf_counter()
    bad = None
    for i in range(H.dim):
        x = H.basis_element(i)
        et, es = twisted_counital_maps(H, tw, x)
        if et != K.eps_t(x) or es != K.eps_s(x):
            bad = H.labels[i]
            break
    report.add("twisted_counital_maps", bad is None, bad, _ms(start))
    return report


def check_morphism(phi, H1: WeakHopf, H2: WeakHopf, samples, instance: str = "morphism", counital: bool = True) -> Report:
    """Check that the linear map ``phi`` (tensor -> tensor) is a weak Hopf morphism H1 -> H2 on samples."""
    report = Report(instance)
    start = time.perf_counter()
    bad_alg = bad_co = bad_eps = bad_s = None
    for a, x in enumerate(samples):
        px = phi(x)
        if bad_co is None:
            lhs = H2.comul(px)
            rhs = _apply_both(phi, H1.comul(x), H1)
            if lhs != rhs:
                bad_co = a
        if bad_eps is None and H2.counit(px) != H1.counit(x):
            bad_eps = a
        if bad_s is None and H2.antipode(px) != phi(H1.antipode(x)):
            bad_s = a
        if bad_alg is None:
            for y in samples[: min(len(samples), 24)]:
                if phi(H1.mul(x, y)) != H2.mul(px, phi(y)):
                    bad_alg = a
                    break
    ms = _ms(start)
    report.add("morphism_algebra", bad_alg is None, bad_alg, ms)
    report.add("morphism_coalgebra", bad_co is None, bad_co)
    report.add("morphism_counit", bad_eps is None, bad_eps)
    report.add("morphism_antipode", bad_s is None, bad_s)
    if counital:
        from . import linalg

        data1, _ = counital_data(H1, n_samples=0)
        data2, _ = counital_data(H2, n_samples=0)
        image = [dict_of(phi(SparseTensor(1, {(k,): v for k, v in row.items()}))) for row in data1.target_basis]
        r_img = linalg.rank(image)
        r_joint = linalg.rank(image + data2.target_basis)
        ok = r_img == len(data1.target_basis) == len(data2.target_basis) == r_joint
        report.add("morphism_counital_bijection", ok, None if ok else (r_img, len(data2.target_basis)))
    return report


def _apply_both(phi, t: SparseTensor, H: WeakHopf) -> SparseTensor:
    out = None
    cache: dict = {}
    for (i, j), c in t.terms.items():
        for k in (i, j):
            if k not in cache:
                cache[k] = phi(H.basis_element(k))
        term = H.tensor(cache[i], cache[j]).scale(c)
        out = term if out is None else out + term
    return out if out is not None else SparseTensor(2)


def gauge_transform(H: WeakHopf, tw: TwistPair, x: SparseTensor) -> tuple[TwistPair, SparseTensor]:
    """Theta^x = Delta(x^-1) Theta (x (x) x), Theta_bar^x = (x^-1 (x) x^-1) Theta_bar Delta(x).

    Returns the new pair and x^-1.  Raises BadGauge unless x is invertible with
    eps_t(x) = eps_s(x) = 1.
    """
    one = H.unit()
    if H.eps_t(x) != one or H.eps_s(x) != one:
        raise BadGauge("gauge element must satisfy eps_t(x) = eps_s(x) = 1")
    x_inv = H.inverse(x)
    if x_inv is None:
        raise BadGauge("gauge element is not invertible")
    xx = H.tensor(x, x)
    xi_xi = H.tensor(x_inv, x_inv)
    theta = H.mul(H.mul(H.comul(x_inv), tw.theta), xx)
    theta_bar = H.mul(H.mul(xi_xi, tw.theta_bar), H.comul(x))
    return TwistPair(theta, theta_bar), x_inv


def gauge_check(H: WeakHopf, tw: TwistPair, x: SparseTensor, samples, instance: str | None = None) -> Report:
    """Gauge-transform the twist and check h -> x^-1 h x is a morphism H_Theta -> H_Theta^x."""
    new, x_inv = gauge_transform(H, tw, x)
    report = verify_twist(H, new, instance=instance or f"{H.name}_gauge")
    K1 = apply_twist(H, tw, check=False)
    K2 = apply_twist(H, new, check=False)
    report.extend(check_morphism(lambda h: H.mul(H.mul(x_inv, h), x), K1, K2, samples, instance=report.instance))
    return report
