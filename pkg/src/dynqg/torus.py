"""The finite torus (Z/ell)^m with its Cartan pairing, group algebra and Cartan tensors.

Torus tensors are stored in the joint idempotent basis P_eta1 (x) ... (x) P_etan,
where multiplication and inversion are pointwise.  The group basis K_gamma is
only used for construction and serialization.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import BadSublattice, NonInvertibleForm, SingularTorusTensor
from .scalars import CyclotomicField, CyclotomicScalar, make_field

Vector = tuple


class TorusGroup:
    """(Z/ell)^m with pairing (beta, gamma) = beta . A . gamma used as a q-exponent."""

    def __init__(self, form: Sequence[Sequence[int]], ell: int):
        self.form = tuple(tuple(int(x) for x in row) for row in form)
        self.m = len(self.form)
        self.ell = ell
        self.field: CyclotomicField = make_field(ell)
        det = int(Matrix(self.form).det())
        self.det = det
        if gcd(det, ell) != 1:
            raise NonInvertibleForm(f"det {det} of the form is not invertible mod {ell}", witness=det)
        self.elements: list[Vector] = list(itertools.product(range(ell), repeat=self.m))
        self.index = {v: i for i, v in enumerate(self.elements)}
        self.size = len(self.elements)
        self.zero = (0,) * self.m
        self._pair_cache: dict = {}

    def __repr__(self) -> str:
        return f"TorusGroup(m={self.m}, ell={self.ell})"

    def vec(self, v: Iterable[int]) -> Vector:
        return tuple(int(x) % self.ell for x in v)

    def add(self, a: Vector, b: Vector) -> Vector:
        ell = self.ell
        return tuple((x + y) % ell for x, y in zip(a, b))

    def sub(self, a: Vector, b: Vector) -> Vector:
        ell = self.ell
        return tuple((x - y) % ell for x, y in zip(a, b))

    def neg(self, a: Vector) -> Vector:
        ell = self.ell
        return tuple((-x) % ell for x in a)

    def scale(self, k: int, a: Vector) -> Vector:
        ell = self.ell
        return tuple((k * x) % ell for x in a)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        """(a, b) mod ell; arguments may be arbitrary integer vectors."""
        total = 0
        form = self.form
        for i, x in enumerate(a):
            if x:
                row = form[i]
                for j, y in enumerate(b):
                    if y and row[j]:
                        total += x * row[j] * y
        return total % self.ell

    def character(self, a: Sequence[int], b: Sequence[int]) -> CyclotomicScalar:
        return self.field.q_power(self.pair(a, b))


# ---------------------------------------------------------------------------
# group algebra elements


class TorusAlgebraElement:
    """Element of the group algebra k[T] in either the group or idempotent basis."""

    def __init__(self, torus: TorusGroup, basis_tag: str, coeffs: dict):
        if basis_tag not in ("group", "idempotent"):
            raise ValueError(basis_tag)
        self.torus = torus
        self.basis_tag = basis_tag
        self.coeffs = {torus.vec(v): c for v, c in coeffs.items() if c}

    def convert(self, to: str) -> "TorusAlgebraElement":
        return basis_convert(self, to)

    def __mul__(self, other: "TorusAlgebraElement") -> "TorusAlgebraElement":
        a = self.convert("idempotent").coeffs
        b = other.convert("idempotent").coeffs
        out = {v: a[v] * b[v] for v in a if v in b}
        return TorusAlgebraElement(self.torus, "idempotent", out).convert(self.basis_tag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusAlgebraElement):
            return NotImplemented
        return self.convert("group").coeffs == other.convert("group").coeffs

    def to_record(self) -> dict:
        return {
            "basis": self.basis_tag,
            "terms": [{"vector": list(v), "coeff": self.coeffs[v].to_record()} for v in sorted(self.coeffs)],
        }


def basis_convert(x: TorusAlgebraElement, to: str) -> TorusAlgebraElement:
    torus = x.torus
    if x.basis_tag == to:
        return x
    field = torus.field
    out = {}
    if to == "group":
        inv = field.from_rational(Fraction(1, torus.size))
        for lam in torus.elements:
            total = field.zero
            for beta, c in x.coeffs.items():
                total = total + c * torus.character(beta, lam)
            if total:
                out[lam] = total * inv
    else:
        for chi in torus.elements:
            total = field.zero
            for lam, c in x.coeffs.items():
                total = total + c * field.q_power(-torus.pair(chi, lam))
            if total:
                out[chi] = total
    return TorusAlgebraElement(torus, to, out)


def idempotents(torus: TorusGroup) -> dict:
    """P_beta for every beta, in the group basis."""
    one = torus.field.one
    return {
        beta: TorusAlgebraElement(torus, "idempotent", {beta: one}).convert("group") for beta in torus.elements
    }


def group_element(torus: TorusGroup, gamma: Sequence[int]) -> TorusAlgebraElement:
    return TorusAlgebraElement(torus, "group", {torus.vec(gamma): torus.field.one})


# ---------------------------------------------------------------------------
# tensors over the torus algebra


class TorusTensor:
    """Rank-n element of k[T]^{(x)n} stored in the joint idempotent basis."""

    __slots__ = ("torus", "rank", "comp")

    def __init__(self, torus: TorusGroup, rank: int, comp: dict):
        self.torus = torus
        self.rank = rank
        self.comp = {k: v for k, v in comp.items() if v}

    # constructors
    @classmethod
    def one(cls, torus: TorusGroup, rank: int) -> "TorusTensor":
        one = torus.field.one
        return cls(torus, rank, {key: one for key in itertools.product(torus.elements, repeat=rank)})

    @classmethod
    def from_group(cls, torus: TorusGroup, rank: int, terms: dict) -> "TorusTensor":
        """terms: {(gamma_1, ..., gamma_n): coeff} for K_gamma1 (x) ... (x) K_gamman."""
        field = torus.field
        comp = {}
        for key in itertools.product(torus.elements, repeat=rank):
            total = field.zero
            for gammas, c in terms.items():
                exponent = 0
                for eta, gamma in zip(key, gammas):
                    exponent -= torus.pair(eta, gamma)
                total = total + c * field.q_power(exponent)
            if total:
                comp[key] = total
        return cls(torus, rank, comp)

    @classmethod
    def monomial(cls, torus: TorusGroup, gammas: Sequence[Sequence[int]], coeff=None) -> "TorusTensor":
        field = torus.field
        coeff = field.one if coeff is None else field.coerce(coeff)
        return cls.from_group(torus, len(gammas), {tuple(torus.vec(g) for g in gammas): coeff})

    def to_group(self) -> dict:
        torus = self.torus
        field = torus.field
        norm = field.from_rational(Fraction(1, torus.size ** self.rank))
        out = {}
        for gammas in itertools.product(torus.elements, repeat=self.rank):
            total = field.zero
            for key, c in self.comp.items():
                exponent = 0
                for eta, gamma in zip(key, gammas):
                    exponent += torus.pair(eta, gamma)
                total = total + c * field.q_power(exponent)
            if total:
                out[gammas] = total * norm
        return out

    # algebra
    def __mul__(self, other):
        if isinstance(other, TorusTensor):
            a, b = self.comp, other.comp
            return TorusTensor(self.torus, self.rank, {k: v * b[k] for k, v in a.items() if k in b})
        c = self.torus.field.coerce(other)
        return TorusTensor(self.torus, self.rank, {k: v * c for k, v in self.comp.items()})

    __rmul__ = __mul__

    def __add__(self, other: "TorusTensor") -> "TorusTensor":
        out = dict(self.comp)
        for k, v in other.comp.items():
            out[k] = out[k] + v if k in out else v
        return TorusTensor(self.torus, self.rank, out)

    def __sub__(self, other: "TorusTensor") -> "TorusTensor":
        return self + other * (-1)

    def __neg__(self) -> "TorusTensor":
        return self * (-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusTensor):
            return NotImplemented
        return self.rank == other.rank and self.comp == other.comp

    def inverse(self) -> "TorusTensor":
        comp = {}
        for key in itertools.product(self.torus.elements, repeat=self.rank):
            value = self.comp.get(key)
            if value is None:
                raise SingularTorusTensor("vanishing idempotent component", witness=key)
            comp[key] = value.inverse()
        return TorusTensor(self.torus, self.rank, comp)

    def component(self, key: Sequence[Vector]) -> CyclotomicScalar:
        return self.comp.get(tuple(self.torus.vec(v) for v in key), self.torus.field.zero)

    def permute(self, order: Sequence[int]) -> "TorusTensor":
        """New tensor whose slot s holds old slot order[s]."""
        return TorusTensor(self.torus, self.rank, {tuple(k[i] for i in order): v for k, v in self.comp.items()})

    def relabel_group(self, slot: int, fn: Callable[[Vector], Vector]) -> "TorusTensor":
        """Apply K_a -> K_{fn(a)} in one slot (any map of group labels)."""
        terms = {}
        for gammas, c in self.to_group().items():
            new = list(gammas)
            new[slot] = self.torus.vec(fn(gammas[slot]))
            new = tuple(new)
            terms[new] = terms[new] + c if new in terms else c
        return TorusTensor.from_group(self.torus, self.rank, terms)

    def shift(self, shifts: Sequence[Sequence[int]]) -> "TorusTensor":
        """Component at eta becomes component at eta + shift (per slot): P_eta -> P_{eta+shift}."""
        torus = self.torus
        out = {}
        for key, v in self.comp.items():
            out[tuple(torus.add(k, s) for k, s in zip(key, shifts))] = v
        return TorusTensor(torus, self.rank, out)

    def to_record(self) -> dict:
        terms = self.to_group()
        return {
            "basis": "group",
            "terms": [
                {"vector": [list(g) for g in key], "coeff": terms[key].to_record()} for key in sorted(terms)
            ],
        }


def invert_torus_tensor(x: TorusTensor) -> TorusTensor:
    return x.inverse()


# ---------------------------------------------------------------------------
# sublattices


class Sublattice:
    """A sublattice of Z^m given by integer generators, with its image in T."""

    def __init__(self, torus: TorusGroup, generators: Sequence[Sequence[int]]):
        self.torus = torus
        self.generators = [tuple(int(x) for x in g) for g in generators]
        self.elements = _subgroup_closure(torus, self.generators)
        self.size = len(self.elements)

    def __contains__(self, v) -> bool:
        return self.torus.vec(v) in self.elements

    def __repr__(self) -> str:
        return f"Sublattice({self.generators}, |image|={self.size})"


def _subgroup_closure(torus: TorusGroup, generators) -> list:
    seen = {torus.zero}
    frontier = [torus.zero]
    gens = [torus.vec(g) for g in generators]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = torus.add(v, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def check_direct_sum(torus: TorusGroup, a: Sublattice, b: Sublattice) -> None:
    if a.size * b.size != torus.size or set(a.elements) & set(b.elements) != {torus.zero}:
        raise BadSublattice("T is not the direct sum of the two subgroups", witness=(a.size, b.size))


def omega(torus: TorusGroup, restrict: Sublattice | None = None) -> TorusTensor:
    """(1/|S|) sum_{beta, gamma in S} q^{(beta,gamma)} K_beta (x) K_gamma, S = T or a subgroup."""
    elements = torus.elements if restrict is None else restrict.elements
    field = torus.field
    norm = field.from_rational(Fraction(1, len(elements)))
    terms = {(b, g): torus.character(b, g) * norm for b in elements for g in elements}
    return TorusTensor.from_group(torus, 2, terms)


def omega_pair(torus: TorusGroup, restrict_l: Sublattice, restrict_perp: Sublattice):
    check_direct_sum(torus, restrict_l, restrict_perp)
    return omega(torus, restrict_l), omega(torus, restrict_perp)


# ---------------------------------------------------------------------------
# integer lattice calculus


def integer_kernel(rows: Sequence[Sequence[int]], m: int) -> list:
    """Z-basis of {x in Z^m : rows . x = 0} via the Smith normal form."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(m)) for j in range(m)]
    mat = Matrix(rows)
    snf, _, right = smith_normal_decomp(mat)
    rank = sum(1 for i in range(min(snf.shape)) if snf[i, i] != 0)
    return [tuple(int(right[i, j]) for i in range(m)) for j in range(rank, m)]


def lattice_index(generators: Sequence[Sequence[int]], m: int):
    """[Z^m : span(generators)], or None if the span has lower rank."""
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return None if m else 1
    snf = smith_normal_decomp(Matrix(gens))[0]
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    if len(nonzero) < m:
        return None
    index = 1
    for d in nonzero:
        index *= d
    return index


def sublattice_calculus(cartan: Sequence[Sequence[int]], gamma1: Sequence[int], tmap: dict) -> dict:
    """Lattices L, L-perp and indices n1 = [Q : Q1 + L], n2 = [Q : L-perp + L] (root coordinates)."""
    m = len(cartan)
    rows = [[cartan[i][k] - cartan[tmap[i]][k] for k in range(m)] for i in gamma1]
    lattice_l = integer_kernel(rows, m)
    perp_rows = [[sum(cartan[k][j] * v[j] for j in range(m)) for k in range(m)] for v in lattice_l]
    lattice_perp = integer_kernel(perp_rows, m)
    q1 = [tuple(1 if k == i else 0 for k in range(m)) for i in gamma1]
    n1 = lattice_index(q1 + lattice_l, m)
    n2 = lattice_index(lattice_perp + lattice_l, m)
    return {"L": lattice_l, "L_perp": lattice_perp, "n1": n1, "n2": n2}
