"""The Hopf algebroid attached to a weak Hopf algebra, with its axiom checks.

Base R = H_t, target map the inclusion, source map S^-1 on H_t, counit eps_t,
antipode S.  H (x)_R H is realized as the subspace Delta(1)(H (x) H) with
projection x -> Delta(1) x, and the section gamma is that same multiplication.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from . import linalg
from .reports import Report
from .tensor import SparseTensor
from .verify import counital_data
from .wha import WeakHopf, dict_of


@dataclass
class AlgebroidData:
    H: WeakHopf
    base: list  # basis of R = H_t as rows
    source_image: list  # basis rows of beta(R) = S^-1(H_t)

    def alpha(self, z: SparseTensor) -> SparseTensor:
        return z

    def beta(self, z: SparseTensor) -> SparseTensor:
        return self.H.apply_antipode_inv(z, 0)

    def counit(self, h: SparseTensor) -> SparseTensor:
        return self.H.eps_t(h)

    def project(self, x: SparseTensor) -> SparseTensor:
        return self.H.mul(self.H.delta_one(), x)

    def section(self, x: SparseTensor) -> SparseTensor:
        return self.H.mul(self.H.delta_one(), x)


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _pairs(n: int, budget: int, seed: int):
    if n * n <= budget:
        return list(itertools.product(range(n), repeat=2))
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(budget)]


def algebroid_from_wha(H: WeakHopf, threshold: int = 512, n_random: int = 64, seed: int = 0,
                       pair_budget: int = 60000, instance: str | None = None) -> tuple[AlgebroidData, Report]:
    report = Report(instance or f"{H.name}_algebroid")
    data, _ = counital_data(H, n_samples=0)
    base = [SparseTensor(1, {(k,): v for k, v in row.items()}) for row in data.target_basis]
    alg = AlgebroidData(H, data.target_basis, [])
    betas = [alg.beta(z) for z in base]
    alg.source_image = linalg.span_basis(dict_of(b) for b in betas)
    samples, full = H.sample_elements(threshold, n_random, seed)
    one = H.unit()
    d1 = H.delta_one()

    # total algebra: images of alpha and beta commute, beta(R) = H_s
    start = time.perf_counter()
    bad = None
    for a, z in enumerate(base):
        for b, y in enumerate(betas):
            if H.mul(z, y) != H.mul(y, z):
                bad = (a, b)
                break
        if bad:
            break
    joint = linalg.rank(alg.source_image + data.source_basis)
    ok = bad is None and joint == len(alg.source_image) == len(data.source_basis)
    report.add("total_algebra", ok, bad, _ms(start), base_dim=len(base))

    # comultiplication lands in Delta(1)(H (x) H); projection idempotent
    start = time.perf_counter()
    ok = H.mul(d1, d1) == d1
    bad = None
    deltas = [H.comul(x) for x in samples]
    for x, dx in zip(samples, deltas):
        if H.mul(d1, dx) != dx:
            bad = sorted(H.labels[i] for (i,) in x.terms)
            break
    report.add("tensor_over_base_realized", ok and bad is None, bad, _ms(start))

    start = time.perf_counter()
    lhs = H.apply_comul(d1, 0)
    ok = H.apply_comul(H.apply_comul(SparseTensor(1, one.terms), 0), 1) == lhs
    bad = None
    for x, dx in zip(samples, deltas):
        if H.apply_comul(dx, 0) != H.apply_comul(dx, 1):
            bad = sorted(H.labels[i] for (i,) in x.terms)
            break
    report.add("coassociative", ok and bad is None, bad, _ms(start))

    # bimodule property and compatibility 1
    start = time.perf_counter()
    bad_bi = bad_c1 = None
    for x, dx in zip(samples, deltas):
        for z, y in zip(base, betas):
            if bad_bi is None:
                if H.comul(H.mul(z, x)) != H.mul(z, dx, (0,), (0, 1), 2) or \
                        H.comul(H.mul(y, x)) != H.mul(y, dx, (1,), (0, 1), 2):
                    bad_bi = sorted(H.labels[i] for (i,) in x.terms)
            if bad_c1 is None and H.mul(dx, y, (0, 1), (0,), 2) != H.mul(dx, z, (0, 1), (1,), 2):
                bad_c1 = sorted(H.labels[i] for (i,) in x.terms)
    report.add("comul_bimodule", bad_bi is None, bad_bi, _ms(start))
    report.add("compatibility_1", bad_c1 is None, bad_c1)

    start = time.perf_counter()
    bad = None
    for a, b in _pairs(len(samples), pair_budget, seed):
        xy = H.mul(samples[a], samples[b])
        if H.comul(xy) != H.mul(deltas[a], deltas[b]):
            bad = (a, b)
            break
    report.add("compatibility_2", bad is None, bad, _ms(start))

    # counit eps_t
    start = time.perf_counter()
    ok = H.eps_t(one) == one
    bad_mod = bad_ax = None
    for x, dx in zip(samples, deltas):
        e = H.eps_t(x)
        if bad_mod is None:
            for z, y, w in zip(base, betas, base[::-1]):
                # a . h . b = alpha(a) beta(b) h
                acted = H.mul(H.mul(z, alg.beta(w)), x)
                if H.eps_t(acted) != H.mul(H.mul(z, e), w):
                    bad_mod = sorted(H.labels[i] for (i,) in x.terms)
                    break
        if bad_ax is None:
            left = H.multiply_slots(H.apply_linear(dx, 0, lambda i: dict_of(H.eps_t(H.basis_element(i)))), 0)
            right = H.multiply_slots(
                H.apply_linear(dx, 1, lambda i: dict_of(alg.beta(H.eps_t(H.basis_element(i))))).flip(), 0
            )
            if left != x or right != x:
                bad_ax = sorted(H.labels[i] for (i,) in x.terms)
    report.add("counit_unital", ok)
    report.add("counit_bimodule", bad_mod is None, bad_mod, _ms(start))
    report.add("counit_axiom", bad_ax is None, bad_ax)

    # antipode
    start = time.perf_counter()
    bad_anti = None
    for a, b in _pairs(len(samples), pair_budget // 4, seed + 1):
        x, y = samples[a], samples[b]
        if H.antipode(H.mul(x, y)) != H.mul(H.antipode(y), H.antipode(x)):
            bad_anti = (a, b)
            break
    report.add("antipode_anti_homomorphism", bad_anti is None, bad_anti, _ms(start))
    ok = all(H.antipode(y) == z for z, y in zip(base, betas))
    report.add("antipode_beta_is_alpha", ok)
    start = time.perf_counter()
    bad1 = bad2 = None
    for x, dx in zip(samples, deltas):
        if bad1 is None:
            lhs = H.multiply_slots(H.apply_antipode(dx, 0), 0)
            if lhs != alg.beta(H.eps_t(H.antipode(x))):
                bad1 = sorted(H.labels[i] for (i,) in x.terms)
        if bad2 is None:
            lhs = H.multiply_slots(H.apply_antipode(alg.section(dx), 1), 0)
            if lhs != H.eps_t(x):
                bad2 = sorted(H.labels[i] for (i,) in x.terms)
    report.add("antipode_property_1", bad1 is None, bad1, _ms(start))
    report.add("antipode_property_2", bad2 is None, bad2)
    report.add("sample_policy", True, None, 0, full_basis=full, size=len(samples))
    return alg, report
