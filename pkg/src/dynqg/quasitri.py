"""Quasitriangular structures and the maps they induce from the dual."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import linalg
from .reports import Report
from .tensor import SparseTensor
from .twist import TwistPair
from .wha import WeakHopf


@dataclass
class QTStructure:
    R: SparseTensor
    R_bar: SparseTensor


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def verify_quasitriangular(H: WeakHopf, qt: QTStructure, samples=None, instance: str | None = None,
                           qybe: bool = True) -> Report:
    """All quasitriangularity identities; intertwining on ``samples`` (default: H's sample policy)."""
    report = Report(instance or H.name)
    R, Rb = qt.R, qt.R_bar
    d1 = H.delta_one()
    d1op = d1.flip()

    start = time.perf_counter()
    ok = H.mul(H.mul(d1op, R), d1) == R and H.mul(H.mul(d1, Rb), d1op) == Rb
    report.add("R_membership", ok, None if ok else "R or R_bar outside the prescribed subspace", _ms(start))
    prod = H.mul(R, Rb)
    ok = prod == d1op
    report.add("R_Rbar_is_delta_op_one", ok, None if ok else prod.first_difference(d1op))
    prod = H.mul(Rb, R)
    ok = prod == d1
    report.add("Rbar_R_is_delta_one", ok, None if ok else prod.first_difference(d1))

    if samples is None:
        samples, _ = H.sample_elements(512, 64, 0)
    start = time.perf_counter()
    bad = None
    for x in samples:
        dx = H.comul(x)
        if H.mul(dx.flip(), R) != H.mul(R, dx):
            bad = sorted(H.labels[i] for (i,) in x.terms)
            break
    report.add("R_intertwines", bad is None, bad, _ms(start), samples=len(samples))

    start = time.perf_counter()
    lhs = H.apply_comul(R, 1)
    rhs = H.mul(R, R, (0, 2), (0, 1), 3)
    ok = lhs == rhs
    report.add("id_x_Delta_R", ok, None if ok else lhs.first_difference(rhs), _ms(start))
    start = time.perf_counter()
    lhs = H.apply_comul(R, 0)
    rhs = H.mul(R, R, (0, 2), (1, 2), 3)
    ok = lhs == rhs
    report.add("Delta_x_id_R", ok, None if ok else lhs.first_difference(rhs), _ms(start))

    if qybe:
        start = time.perf_counter()
        lhs = H.mul(H.mul(R, R, (0, 1), (0, 2), 3), R, (0, 1, 2), (1, 2), 3)
        rhs = H.mul(H.mul(R, R, (1, 2), (0, 2), 3), R, (0, 1, 2), (0, 1), 3)
        ok = lhs == rhs
        report.add("QYBE", ok, None if ok else lhs.first_difference(rhs), _ms(start))
    return report


def twist_qt(H: WeakHopf, qt: QTStructure, tw: TwistPair) -> QTStructure:
    """(Theta_bar_21 R Theta, Theta_bar R_bar Theta_21) for the twisted algebra."""
    R = H.mul(H.mul(tw.theta_bar.flip(), qt.R), tw.theta)
    Rb = H.mul(H.mul(tw.theta_bar, qt.R_bar), tw.theta.flip())
    return QTStructure(R, Rb)


class RhoMap:
    """rho_1(phi) = (id (x) phi)(R) or rho_2(phi) = (phi (x) id)(R), phi in the dual basis."""

    def __init__(self, H: WeakHopf, qt: QTStructure, which: int = 1):
        self.H = H
        self.which = which
        self.columns: list[dict] = [dict() for _ in range(H.dim)]
        for (i, j), c in qt.R.terms.items():
            dual, image = (j, i) if which == 1 else (i, j)
            self.columns[dual][image] = c

    def __call__(self, phi: dict) -> dict:
        """Image of the functional with values ``phi`` = {basis index: value}."""
        out: dict = {}
        for k, a in phi.items():
            for i, c in self.columns[k].items():
                out[i] = out[i] + a * c if i in out else a * c
        return {i: v for i, v in out.items() if v}

    def rank(self) -> int:
        return linalg.rank(col for col in self.columns if col)


def _dual_product(H: WeakHopf, phi: dict, psi: dict) -> dict:
    out = {}
    for k in range(H.dim):
        total = H.field.zero
        for (i, j), v in H.comul_basis(k).items():
            a = phi.get(i)
            b = psi.get(j) if a is not None else None
            if b is not None:
                total = total + v * a * b
        if total:
            out[k] = total
    return out


def rho_map(H: WeakHopf, qt: QTStructure, which: int = 1, n_samples: int = 12, seed: int = 0,
            instance: str | None = None) -> tuple[RhoMap, Report]:
    """The map H* -> H from R with its morphism checks and rank."""
    report = Report(instance or H.name)
    rho = RhoMap(H, qt, which)
    rng = random.Random(seed)
    picks = [rng.randrange(H.dim) for _ in range(n_samples)]
    one = H.field.one
    start = time.perf_counter()
    bad_alg = bad_co = None
    for a in picks:
        for b in picks[: max(1, n_samples // 3)]:
            phi, psi = {a: one}, {b: one}
            image = rho(_dual_product(H, phi, psi))
            x = H.element_from(rho(phi))
            y = H.element_from(rho(psi))
            expected = H.mul(y, x) if which == 1 else H.mul(x, y)
            if H.element_from(image) != expected:
                bad_alg = (H.labels[a], H.labels[b])
                break
        # coproduct of a dual basis functional: <Delta phi_a, e_i (x) e_j> = (e_i e_j)_a
        x = H.element_from(rho({a: one}))
        lhs = H.comul(x)
        rhs = SparseTensor(2)
        terms: dict = {}
        for i in range(H.dim):
            for j in range(H.dim):
                c = H.mul_basis(i, j).get(a)
                if c:
                    ri = rho({i: one})
                    rj = rho({j: one})
                    for p, u in ri.items():
                        for r, w in rj.items():
                            key = (p, r) if which == 1 else (r, p)
                            t = c * u * w
                            terms[key] = terms[key] + t if key in terms else t
        rhs = SparseTensor(2, terms)
        if lhs != rhs and bad_co is None:
            bad_co = H.labels[a]
    report.add("rho_algebra_map", bad_alg is None, bad_alg, _ms(start), target="H^op" if which == 1 else "H")
    report.add("rho_coalgebra_map", bad_co is None, bad_co, 0, target="H" if which == 1 else "H^cop")
    start = time.perf_counter()
    r = rho.rank()
    report.add("rho_rank", True, None, _ms(start), rank=r, dim=H.dim, full=r == H.dim)
    return rho, report
