"""Axiom verification for weak Hopf algebras and their counital data."""

from __future__ import annotations

import itertools
import random
import time
from typing import Sequence

from . import linalg
from .reports import Report
from .tensor import SparseTensor
from .wha import WeakHopf, dict_of


def _label(H: WeakHopf, x: SparseTensor):
    """Short description of a sample element for witnesses."""
    if len(x.terms) == 1:
        ((i,),) = x.terms.keys()
        return H.labels[i]
    return sorted(H.labels[i] for (i,) in x.terms)


class _Timer:
    def __init__(self):
        self.start = time.perf_counter()

    def ms(self) -> int:
        return int((time.perf_counter() - self.start) * 1000)


def _triples(sample, budget: int, n_samples: int, seed: int):
    n = len(sample)
    if n ** 3 <= budget:
        return list(itertools.product(range(n), repeat=3))
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(n_samples)]


def verify_axioms(
    H: WeakHopf,
    threshold: int = 512,
    n_random: int = 64,
    seed: int = 0,
    triple_budget: int = 30000,
    triple_samples: int = 1500,
    instance: str | None = None,
    pair_mode: str = "auto",
) -> Report:
    """Check every weak bialgebra and antipode axiom on the chosen sample.

    ``pair_mode='all'`` checks multiplicativity of the coproduct on all pairs
    of sample elements, ``'generators'`` on generators x sample; ``'auto'``
    picks 'all' for the full basis and 'generators' otherwise.
    """
    report = Report(instance or H.name)
    sample, full = H.sample_elements(threshold, n_random, seed)
    if pair_mode == "auto":
        pair_mode = "all" if full else "generators"
    n_left = len(sample) if pair_mode == "all" or full else len(H.generators or [])
    one = H.unit()

    t = _Timer()
    bad = None
    for x in sample:
        if H.mul(one, x) != x or H.mul(x, one) != x:
            bad = _label(H, x)
            break
    report.add("unit", bad is None, bad, t.ms())

    t = _Timer()
    bad = None
    for a, b, c in _triples(sample, triple_budget, triple_samples, seed):
        x, y, z = sample[a], sample[b], sample[c]
        if H.mul(H.mul(x, y), z) != H.mul(x, H.mul(y, z)):
            bad = (_label(H, x), _label(H, y), _label(H, z))
            break
    report.add("associativity", bad is None, bad, t.ms())

    deltas = [H.comul(x) for x in sample]

    t = _Timer()
    bad = None
    for x, d in zip(sample, deltas):
        if H.apply_counit(d, 0) != x or H.apply_counit(d, 1) != x:
            bad = _label(H, x)
            break
    report.add("counit", bad is None, bad, t.ms())

    t = _Timer()
    bad = None
    for x, d in zip(sample, deltas):
        if H.apply_comul(d, 0) != H.apply_comul(d, 1):
            bad = _label(H, x)
            break
    report.add("coassociativity", bad is None, bad, t.ms())

    t = _Timer()
    bad = _check_delta_multiplicative(H, sample, deltas, n_left)
    report.add("delta_multiplicative", bad is None, bad, t.ms(), pairs=pair_mode)

    t = _Timer()
    bad = _check_eps_m(H, sample, deltas, _triples(sample, triple_budget, triple_samples, seed + 1))
    report.add("eps_m", bad is None, bad, t.ms())

    t = _Timer()
    d1 = H.delta_one()
    lhs = H.apply_comul(d1, 0)
    mid = H.mul(d1, d1, (0, 1), (1, 2), 3)
    rhs = H.mul(d1, d1, (1, 2), (0, 1), 3)
    ok = lhs == mid == rhs
    report.add("delta_one", ok, None if ok else "(Delta(x)id)Delta(1) mismatch", t.ms())

    t = _Timer()
    bad_t = bad_s = bad_sis = None
    for x, d in zip(sample, deltas):
        if bad_t is None and H.multiply_slots(H.apply_antipode(d, 1), 0) != H.eps_t(x):
            bad_t = _label(H, x)
        if bad_s is None and H.multiply_slots(H.apply_antipode(d, 0), 0) != H.eps_s(x):
            bad_s = _label(H, x)
        if bad_sis is None:
            d3 = H.apply_comul(d, 0)
            d3 = H.apply_antipode(H.apply_antipode(d3, 0), 2)
            if H.multiply_slots(H.multiply_slots(d3, 0), 0) != H.antipode(x):
                bad_sis = _label(H, x)
    ms = t.ms()
    report.add("antipode_eps_t", bad_t is None, bad_t, ms)
    report.add("antipode_eps_s", bad_s is None, bad_s, 0)
    report.add("antipode_S_id_S", bad_sis is None, bad_sis, 0)

    ordinary = d1 == H.unit_tensor(2)
    report.add("is_ordinary_hopf_flag", True, None, 0, value=ordinary)
    report.add("sample_policy", True, None, 0, full_basis=full, size=len(sample))
    return report


def _check_delta_multiplicative(H: WeakHopf, sample, deltas, n_left: int):
    for x, dx in zip(sample[:n_left], deltas[:n_left]):
        for y, dy in zip(sample, deltas):
            xy = H.mul(x, y)
            lhs = H.comul(xy) if xy else SparseTensor(2)
            rhs = H.mul(dx, dy)
            if lhs != rhs:
                return (_label(H, x), _label(H, y))
    return None


def _check_eps_m(H: WeakHopf, sample, deltas, triples):
    eps = H.counit
    for a, b, c in triples:
        h, g, f = sample[a], sample[b], sample[c]
        lhs = eps(H.mul(H.mul(h, g), f))
        d = deltas[b]
        r1 = H.field.zero
        r2 = H.field.zero
        for (i, j), v in d.terms.items():
            gi = H.basis_element(i)
            gj = H.basis_element(j)
            r1 = r1 + v * eps(H.mul(h, gi)) * eps(H.mul(gj, f))
            r2 = r2 + v * eps(H.mul(h, gj)) * eps(H.mul(gi, f))
        if not (lhs == r1 == r2):
            return (_label(H, h), _label(H, g), _label(H, f))
    return None


# ----------------------------------------------------------------------
# counital data


class CounitalData:
    def __init__(self, H: WeakHopf, eps_t: list, eps_s: list, target_basis: list, source_basis: list, e_t, e_s):
        self.H = H
        self.eps_t_matrix = eps_t
        self.eps_s_matrix = eps_s
        self.target_basis = target_basis
        self.source_basis = source_basis
        self.e_t = e_t
        self.e_s = e_s

    def eps_t(self, i: int) -> dict:
        return self.eps_t_matrix[i]

    def eps_s(self, i: int) -> dict:
        return self.eps_s_matrix[i]


def counital_data(H: WeakHopf, n_samples: int = 20, seed: int = 0, instance: str | None = None):
    """Counital maps, counital subalgebras and separability idempotents, with checks."""
    report = Report(instance or H.name)
    t = _Timer()
    eps_t = [dict_of(H.eps_t(H.basis_element(i))) for i in range(H.dim)]
    eps_s = [dict_of(H.eps_s(H.basis_element(i))) for i in range(H.dim)]
    d1 = H.delta_one()
    first: dict = {}
    second: dict = {}
    for (a, b), v in d1.terms.items():
        first.setdefault(a, {})[b] = v
        second.setdefault(b, {})[a] = v
    target_basis = linalg.span_basis(first.values())
    source_basis = linalg.span_basis(second.values())
    e_t = H.apply_antipode(d1, 0)
    e_s = H.apply_antipode(d1, 1)
    data = CounitalData(H, eps_t, eps_s, target_basis, source_basis, e_t, e_s)
    report.add("counital_maps", True, None, t.ms(), dim_target=len(target_basis), dim_source=len(source_basis))

    one = H.unit()
    ok = H.multiply_slots(e_t, 0) == one and H.multiply_slots(e_s, 0) == one
    report.add("separability_units", ok, None if ok else "m(e_t) or m(e_s) != 1")

    def apply(matrix, v: dict) -> dict:
        out: dict = {}
        for i, c in v.items():
            for j, w in matrix[i].items():
                out[j] = out[j] + c * w if j in out else c * w
        return {k: v for k, v in out.items() if v}

    bad = None
    for i in range(H.dim):
        if apply(eps_t, eps_t[i]) != eps_t[i] or apply(eps_s, eps_s[i]) != eps_s[i]:
            bad = H.labels[i]
            break
    report.add("counital_idempotent", bad is None, bad)

    bad = None
    for i in range(H.dim):
        lhs = dict_of(H.antipode(SparseTensor(1, {(k,): v for k, v in eps_t[i].items()})))
        rhs = apply(eps_s, H.antipode_basis(i))
        if lhs != rhs:
            bad = H.labels[i]
            break
    report.add("antipode_swaps_counital_maps", bad is None, bad)

    # image of eps_t equals the span of (phi (x) id)Delta(1)
    image_t = linalg.span_basis([m for m in eps_t if m])
    image_s = linalg.span_basis([m for m in eps_s if m])
    ok = linalg.rank(image_t + target_basis) == len(target_basis) == len(image_t)
    ok = ok and linalg.rank(image_s + source_basis) == len(source_basis) == len(image_s)
    report.add("counital_subalgebras", ok, None if ok else (len(image_t), len(target_basis)))

    # sliding identities on sampled h and counital elements
    rng = random.Random(seed)
    zs = [SparseTensor(1, {(k,): v for k, v in row.items()}) for row in target_basis]
    ys = [SparseTensor(1, {(k,): v for k, v in row.items()}) for row in source_basis]
    bad_z = bad_y = None
    for _ in range(n_samples):
        h = H.basis_element(rng.randrange(H.dim))
        dh = H.comul(h)
        z1, z2 = rng.choice(zs), rng.choice(zs)
        lhs = H.mul(H.mul(z1, dh, (1,), (0, 1), 2), z2, (0, 1), (1,), 2)
        rhs = H.mul(H.mul(H.antipode(z1), dh, (0,), (0, 1), 2), H.antipode(z2), (0, 1), (0,), 2)
        if lhs != rhs and bad_z is None:
            bad_z = _label(H, h)
        y1, y2 = rng.choice(ys), rng.choice(ys)
        lhs = H.mul(H.mul(y1, dh, (0,), (0, 1), 2), y2, (0, 1), (0,), 2)
        rhs = H.mul(H.mul(H.antipode(y1), dh, (1,), (0, 1), 2), H.antipode(y2), (0, 1), (1,), 2)
        if lhs != rhs and bad_y is None:
            bad_y = _label(H, h)
    report.add("sliding_target", bad_z is None, bad_z)
    report.add("sliding_source", bad_y is None, bad_y)
    return data, report
