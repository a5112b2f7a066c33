"""The small quantum group u_q(g) at an odd root of unity.

Elements are written in the basis F^a P_g E^b where P_g are the torus
idempotents (K acts on P_g by q^{-(g, .)}).  In this basis a product x*y
vanishes unless the right torus label of x equals the left torus label of y,
which the weak Hopf machinery exploits.  Products are computed from the
left action of the generators; an independent right action is kept for the
confluence test.

Only rank one (type A1) has a multiplication table here.  Cartan data for
higher type A exist because the torus and Belavin-Drinfeld lattice work
needs them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from sympy import Matrix

from .errors import CoprimalityViolation, UnsupportedType
from .quasitri import QTStructure
from .scalars import CyclotomicField, LambdaParam, make_field
from .tensor import SparseTensor
from .torus import TorusGroup
from .wha import WeakHopf


@dataclass(frozen=True)
class CartanDatum:
    type: str
    rank: int
    cartan: tuple
    positive_roots: tuple  # root names in the fixed normal ordering
    root_expansions: tuple  # each root as simple-root coordinates

    @property
    def det(self) -> int:
        return int(Matrix(self.cartan).det())

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.cartan[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))


def cartan_datum(type_label: str) -> CartanDatum:
    """Type A_m with the ordering alpha_{i..j} sorted by (i, j); e.g. A2: a1, a1+a2, a2."""
    label = type_label.upper()
    if not label.startswith("A") or not label[1:].isdigit() or int(label[1:]) < 1:
        raise UnsupportedType(f"Cartan type {type_label!r} is not supported (type A only)", witness=type_label)
    m = int(label[1:])
    cartan = tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(m)) for i in range(m))
    roots = []
    names = []
    for i in range(m):
        for j in range(i, m):
            roots.append(tuple(1 if i <= k <= j else 0 for k in range(m)))
            names.append("+".join(f"a{k + 1}" for k in range(i, j + 1)))
    return CartanDatum(label, m, cartan, tuple(names), tuple(roots))


class QuantumGroup:
    """u_q(sl2) with basis labels (a, g, b) meaning F^a P_g E^b."""

    def __init__(self, datum: CartanDatum, ell: int):
        self.datum = datum
        self.ell = ell
        self.field: CyclotomicField = make_field(ell)
        if gcd(ell, datum.det) != 1:
            raise CoprimalityViolation(f"ell={ell} is not coprime to det={datum.det}", witness=(ell, datum.det))
        if datum.rank != 1:
            raise UnsupportedType(
                f"PBW straightening for {datum.type} is not implemented (rank one only)", witness=datum.type
            )
        self.torus = TorusGroup(datum.cartan, ell)
        self.labels = [(a, g, b) for a in range(ell) for g in range(ell) for b in range(ell)]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        f = self.field
        # sums s(c, d) = sum_{n<c} [-2(d+n)]_q used by E F^c P_d = F^c P_{d-1} E + s F^{c-1} P_d
        self._ef = {}
        for d in range(ell):
            acc = f.zero
            self._ef[(0, d)] = acc
            for c in range(1, ell):
                acc = acc + f.q_int(-2 * (d + c - 1))
                self._ef[(c, d)] = acc
        self.hopf = self._build_hopf()
        self._r = None

    # ------------------------------------------------------------------
    # labels and gradings

    def left_key(self, label) -> int:
        a, g, b = label
        return (g + a) % self.ell

    def right_key(self, label) -> int:
        a, g, b = label
        return (g + b) % self.ell

    def weight(self, label) -> tuple:
        """Z^m weight: number of E's minus number of F's."""
        a, g, b = label
        return (b - a,)

    def degree(self, label) -> int:
        return sum(self.weight(label))

    # ------------------------------------------------------------------
    # generator actions on basis dicts

    def _left(self, gen, arg, x: dict) -> dict:
        ell, f = self.ell, self.field
        out: dict = {}

        def put(key, v):
            if v:
                s = out.get(key)
                out[key] = v if s is None else s + v

        for (c, d, e), v in x.items():
            if gen == "E":
                if e + 1 < ell:
                    put((c, (d - 1) % ell, e + 1), v)
                if c > 0:
                    put((c - 1, d, e), v * self._ef[(c, d)])
            elif gen == "F":
                if c + 1 < ell:
                    put((c + 1, d, e), v)
            elif gen == "P":
                if (d + c - arg) % ell == 0:
                    put((c, d, e), v)
            elif gen == "K":
                put((c, d, e), v * f.q_power(-2 * (d + c) * arg))
        return {k: v for k, v in out.items() if v}

    def _right(self, gen, arg, x: dict) -> dict:
        ell, f = self.ell, self.field
        out: dict = {}

        def put(key, v):
            if v:
                s = out.get(key)
                out[key] = v if s is None else s + v

        for (a, g, b), v in x.items():
            if gen == "E":
                if b + 1 < ell:
                    put((a, g, b + 1), v)
            elif gen == "F":
                if a + 1 < ell:
                    put((a + 1, (g - 1) % ell, b), v)
                if b > 0:
                    t = f.zero
                    for j in range(b):
                        t = t + f.q_int(-2 * (g + j))
                    put((a, g, b - 1), v * t)
            elif gen == "P":
                if (g + b - arg) % ell == 0:
                    put((a, g, b), v)
            elif gen == "K":
                put((a, g, b), v * f.q_power(-2 * (g + b) * arg))
        return {k: v for k, v in out.items() if v}

    def _mul_labels(self, x, y) -> dict:
        a, g, b = x
        cur = {y: self.field.one}
        for _ in range(b):
            cur = self._left("E", None, cur)
            if not cur:
                return {}
        cur = self._left("P", g, cur)
        for _ in range(a):
            cur = self._left("F", None, cur)
            if not cur:
                return {}
        return cur

    # ------------------------------------------------------------------
    # named elements (as rank-1 tensors)

    def _el(self, d: dict) -> SparseTensor:
        return SparseTensor(1, {(self.index[k],): v for k, v in d.items()})

    def E(self, i: int = 0) -> SparseTensor:
        return self._el({(0, g, 1): self.field.one for g in range(self.ell)})

    def F(self, i: int = 0) -> SparseTensor:
        return self._el({(1, g, 0): self.field.one for g in range(self.ell)})

    def K(self, power: int = 1) -> SparseTensor:
        f = self.field
        return self._el({(0, g, 0): f.q_power(-2 * g * power) for g in range(self.ell)})

    def K_vec(self, gamma: Sequence[int]) -> SparseTensor:
        return self.K(gamma[0])

    def P(self, mu) -> SparseTensor:
        mu = mu[0] if isinstance(mu, (tuple, list)) else mu
        return self._el({(0, mu % self.ell, 0): self.field.one})

    def one(self) -> SparseTensor:
        return self.hopf.unit()

    # ------------------------------------------------------------------
    # words

    def normalize(self, word: Sequence[tuple], order: str = "left") -> SparseTensor:
        """PBW normal form of a word of tokens ("E", n), ("F", n), ("K", n), ("P", mu).

        ``order='left'`` folds the word from the left with right actions,
        ``order='right'`` folds from the right with left actions.
        """
        f = self.field
        cur = {(0, g, 0): f.one for g in range(self.ell)}
        tokens = []
        for tok in word:
            gen, n = tok
            if gen in ("E", "F"):
                tokens.extend([(gen, None)] * n)
            elif gen == "K":
                tokens.append(("K", n))
            elif gen == "P":
                tokens.append(("P", n % self.ell))
            else:
                raise ValueError(f"unknown generator {gen!r}")
        if order == "left":
            for gen, arg in tokens:
                cur = self._right(gen, arg, cur)
        else:
            for gen, arg in reversed(tokens):
                cur = self._left(gen, arg, cur)
        return self._el(cur)

    def random_word(self, rng: random.Random, length: int = 6) -> list:
        word = []
        for _ in range(length):
            gen = rng.choice("EFKP")
            if gen in "EF":
                word.append((gen, rng.randint(1, 2)))
            elif gen == "K":
                word.append(("K", rng.randint(-2, 2)))
            else:
                word.append(("P", rng.randrange(self.ell)))
        return word

    # ------------------------------------------------------------------
    # Hopf structure

    def _build_hopf(self) -> WeakHopf:
        f = self.field
        ell = self.ell
        idx = self.index
        labels = self.labels
        one = f.one

        def mul(i, j):
            x, y = labels[i], labels[j]
            if self.right_key(x) != self.left_key(y):
                return {}
            return {idx[k]: v for k, v in self._mul_labels(x, y).items()}

        def counit(i):
            a, g, b = labels[i]
            return one if (a, g, b) == (0, 0, 0) else f.zero

        H = WeakHopf(
            f"u_q(sl2)[ell={ell}]",
            f,
            labels,
            mul=mul,
            unit={idx[(0, g, 0)]: one for g in range(ell)},
            comul=lambda i: self._comul(i),
            counit=counit,
            antipode=lambda i: self._antipode(i, inverse=False),
            antipode_inv=lambda i: self._antipode(i, inverse=True),
            left_key=[self.left_key(lab) for lab in labels],
            right_key=[self.right_key(lab) for lab in labels],
        )
        self.hopf = H
        H.generators = [dict((k[0], v) for k, v in t.terms.items()) for t in (self.E(), self.F(), self.K())]
        H.generators += [{idx[(0, g, 0)]: one} for g in range(ell)]
        return H

    def _power_tensors(self, x: SparseTensor, n_max: int) -> list:
        H = self.hopf
        powers = [H.unit_tensor(x.rank)]
        for _ in range(n_max):
            powers.append(H.mul(powers[-1], x))
        return powers

    def _comul(self, i: int) -> dict:
        if not hasattr(self, "_delta_f"):
            H = self.hopf
            f = self.field
            ell = self.ell
            kinv = self.K(-1)
            k = self.K(1)
            one = H.unit()
            dF = H.tensor(self.F(), kinv) + H.tensor(one, self.F())
            dE = H.tensor(self.E(), one) + H.tensor(k, self.E())
            self._delta_f = self._power_tensors(dF, ell - 1)
            self._delta_e = self._power_tensors(dE, ell - 1)
            self._delta_p = {}
            for g in range(ell):
                self._delta_p[g] = SparseTensor(2, {
                    (self.index[(0, mu, 0)], self.index[(0, (g - mu) % ell, 0)]): f.one for mu in range(ell)
                })
        a, g, b = self.labels[i]
        H = self.hopf
        t = H.mul(H.mul(self._delta_f[a], self._delta_p[g]), self._delta_e[b])
        return dict(t.terms)

    def _antipode(self, i: int, inverse: bool) -> dict:
        """S (or S^-1) as an anti-homomorphism from S(E) = -K^-1 E, S(F) = -F K, S(P_g) = P_-g."""
        H = self.hopf
        a, g, b = self.labels[i]
        if inverse:
            sE = H.mul(self.E(), self.K(-1)).scale(-self.field.one)
            sF = H.mul(self.K(1), self.F()).scale(-self.field.one)
        else:
            sE = H.mul(self.K(-1), self.E()).scale(-self.field.one)
            sF = H.mul(self.F(), self.K(1)).scale(-self.field.one)
        result = H.unit()
        for _ in range(b):
            result = H.mul(result, sE)
        result = H.mul(result, self.P(-g))
        for _ in range(a):
            result = H.mul(result, sF)
        return {k[0]: v for k, v in result.terms.items()}

    # ------------------------------------------------------------------
    # torus tensors inside U (x) ... (x) U

    def torus_tensor(self, tt) -> SparseTensor:
        """Embed a TorusTensor (idempotent components) as a tensor over U."""
        terms = {}
        for key, v in tt.comp.items():
            terms[tuple(self.index[(0, eta[0], 0)] for eta in key)] = v
        return SparseTensor(tt.rank, terms)

    def omega(self, inverse: bool = False) -> SparseTensor:
        """Omega = sum_{b, h} q^{-(b,h)} P_b (x) P_h (inverse: q^{+(b,h)})."""
        f = self.field
        sign = 1 if inverse else -1
        terms = {}
        for b in range(self.ell):
            for h in range(self.ell):
                terms[(self.index[(0, b, 0)], self.index[(0, h, 0)])] = f.q_power(sign * self.torus.pair((b,), (h,)))
        return SparseTensor(2, terms)

    # ------------------------------------------------------------------
    # automorphisms

    def lambda_auto(self, Lambda: LambdaParam, x: SparseTensor, slot: int = 0) -> SparseTensor:
        """Lambda acts on U[beta] by Lambda_beta, in one tensor slot."""
        f = self.field
        out = {}
        for key, v in x.terms.items():
            w = Lambda.power(self.weight(self.labels[key[slot]]))
            out[key] = v * f.from_rational(w)
        return SparseTensor(x.rank, out)

    def ad_torus(self, lam: Sequence[int], x: SparseTensor, slot: int = 0) -> SparseTensor:
        """Ad K_lambda: a weight-alpha component is scaled by q^{(alpha, lambda)}."""
        f = self.field
        out = {}
        for key, v in x.terms.items():
            e = self.torus.pair(self.weight(self.labels[key[slot]]), lam)
            out[key] = v * f.q_power(e)
        return SparseTensor(x.rank, out)

    def weight_decomposition(self, x: SparseTensor) -> dict:
        parts: dict = {}
        for key, v in x.terms.items():
            w = tuple(self.weight(self.labels[k]) for k in key)
            parts.setdefault(w, {})[key] = v
        return {w: SparseTensor(x.rank, t) for w, t in parts.items()}

    def degree_decomposition(self, x: SparseTensor, slot: int | None = None) -> dict:
        parts: dict = {}
        for key, v in x.terms.items():
            ks = key if slot is None else (key[slot],)
            d = sum(self.degree(self.labels[k]) for k in ks)
            parts.setdefault(d, {})[key] = v
        return {d: SparseTensor(x.rank, t) for d, t in parts.items()}

    def is_zero_weight(self, x: SparseTensor) -> bool:
        """x commutes with the n-fold coproduct of each torus generator."""
        H = self.hopf
        kk = self.K()
        for _ in range(x.rank - 1):
            kk = H.tensor(kk, self.K())
        return H.mul(kk, x) == H.mul(x, kk)

    # ------------------------------------------------------------------
    # universal R-matrix

    def r_coefficient(self, n: int):
        f = self.field
        return f.q_power(-(n * (n + 1)) // 2) * (f.one - f.q_power(2)) ** n * f.q_factorial_inverse(n)

    def r_unipotent(self) -> SparseTensor:
        """sum_n c_n E^n (x) F^n."""
        H = self.hopf
        e_pows = self._power_tensors(self.E(), self.ell - 1)
        f_pows = self._power_tensors(self.F(), self.ell - 1)
        total = SparseTensor(2)
        for n in range(self.ell):
            total = total + H.tensor(e_pows[n], f_pows[n]).scale(self.r_coefficient(n))
        return total

    def universal_R(self) -> QTStructure:
        if self._r is None:
            H = self.hopf
            u = self.r_unipotent()
            R = H.mul(u, self.omega())
            u_inv = unipotent_inverse(H, u, self.ell)
            R_bar = H.mul(self.omega(inverse=True), u_inv)
            self._r = QTStructure(R, R_bar)
        return self._r

    # ------------------------------------------------------------------
    # dumps

    def element_record(self, x: SparseTensor) -> dict:
        """Rank-1 element in the F^a K^k E^b basis."""
        f = self.field
        ell = self.ell
        norm = f.from_rational(Fraction(1, ell))
        out: dict = {}
        for (i,), v in x.terms.items():
            a, g, b = self.labels[i]
            for kk in range(ell):
                key = (a, kk, b)
                t = v * norm * f.q_power(self.torus.pair((g,), (kk,)))
                out[key] = out[key] + t if key in out else t
        return {
            "terms": [
                {"f": [a], "k": [kk], "e": [b], "coeff": c.to_record()}
                for (a, kk, b), c in sorted(out.items()) if c
            ]
        }

    def tensor_record(self, x: SparseTensor) -> dict:
        """Tensor dump in the P-basis labels (f, p, e) per slot."""
        return {
            "terms": [
                {"slots": [dict(zip(("f", "p", "e"), self.labels[k])) for k in key], "coeff": v.to_record()}
                for key, v in sorted(x.terms.items())
            ]
        }


def unipotent_inverse(H: WeakHopf, u: SparseTensor, bound: int) -> SparseTensor:
    """(1 + N)^-1 = sum_k (-N)^k for u = 1 + N with N nilpotent (at most ``bound`` terms beyond 1)."""
    one = H.unit_tensor(u.rank)
    nil = u - one
    term = one
    total = one
    neg = nil.scale(-H.field.one)
    for _ in range(bound * 4):
        term = H.mul(term, neg)
        if not term:
            break
        total = total + term
    else:
        raise ValueError("element is not unipotent within the degree bound")
    return total


def build_uq(datum: CartanDatum | str, ell: int) -> QuantumGroup:
    if isinstance(datum, str):
        datum = cartan_datum(datum)
    make_field(ell)
    return QuantumGroup(datum, ell)
