"""Finite-dimensional weak Hopf algebras given by structure rules on a basis.

A :class:`WeakHopf` holds closures ``mul(i, j)``, ``comul(i)``, ``counit(i)``
and ``antipode(i)`` on basis indices and caches their values.  All tensor
manipulation (products in tensor powers, applying a structure map in one
slot) goes through the methods here.

Optional ``left_key``/``right_key`` labels speed products up: they must
satisfy ``mul(i, j) == 0`` unless ``right_key[i] == left_key[j]``.  For matrix
units and for PBW monomials written with torus idempotents this is exact and
cuts the work in tensor powers by orders of magnitude.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Sequence

from .scalars import CyclotomicField
from .tensor import SparseTensor


class WeakHopf:
    def __init__(
        self,
        name: str,
        field: CyclotomicField,
        labels: Sequence,
        *,
        mul: Callable[[int, int], dict],
        unit: dict,
        comul: Callable[[int], dict],
        counit: Callable[[int], object],
        antipode: Callable[[int], dict],
        antipode_inv: Callable[[int], dict] | None = None,
        left_key: Sequence | None = None,
        right_key: Sequence | None = None,
        generators: Sequence[dict] | None = None,
    ):
        self.name = name
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.index = {label: i for i, label in enumerate(self.labels)}
        self._mul_fn = mul
        self._comul_fn = comul
        self._counit_fn = counit
        self._antipode_fn = antipode
        self._antipode_inv_fn = antipode_inv
        self._mul_rows: list[dict] = [dict() for _ in range(self.dim)]
        self._comul_cache: dict = {}
        self._counit_cache: dict = {}
        self._antipode_cache: dict = {}
        self._antipode_inv_cache: dict = {}
        self.unit_terms = {k: v for k, v in unit.items() if v}
        self.left_key = list(left_key) if left_key is not None else None
        self.right_key = list(right_key) if right_key is not None else None
        self.generators = list(generators) if generators is not None else None
        self._delta_one = None

    def __repr__(self) -> str:
        return f"WeakHopf({self.name!r}, dim={self.dim})"

    # ------------------------------------------------------------------
    # basis-level structure (cached)

    def mul_basis(self, i: int, j: int) -> dict:
        row = self._mul_rows[i]
        value = row.get(j)
        if value is None:
            value = {k: v for k, v in self._mul_fn(i, j).items() if v}
            row[j] = value
        return value

    def comul_basis(self, i: int) -> dict:
        value = self._comul_cache.get(i)
        if value is None:
            value = {k: v for k, v in self._comul_fn(i).items() if v}
            self._comul_cache[i] = value
        return value

    def counit_basis(self, i: int):
        value = self._counit_cache.get(i)
        if value is None:
            value = self.field.coerce(self._counit_fn(i))
            self._counit_cache[i] = value
        return value

    def antipode_basis(self, i: int) -> dict:
        value = self._antipode_cache.get(i)
        if value is None:
            value = {k: v for k, v in self._antipode_fn(i).items() if v}
            self._antipode_cache[i] = value
        return value

    def antipode_inv_basis(self, i: int) -> dict:
        if self._antipode_inv_fn is None:
            self._antipode_inv_fn = _invert_linear_map(self, self.antipode_basis)
        value = self._antipode_inv_cache.get(i)
        if value is None:
            value = {k: v for k, v in self._antipode_inv_fn(i).items() if v}
            self._antipode_inv_cache[i] = value
        return value

    # ------------------------------------------------------------------
    # elements

    def basis_element(self, i: int, coeff=None) -> SparseTensor:
        return SparseTensor(1, {(i,): self.field.one if coeff is None else self.field.coerce(coeff)})

    def element(self, coeffs: dict) -> SparseTensor:
        """Rank-1 tensor from {label: coeff}."""
        return SparseTensor(1, {(self.index[l],): self.field.coerce(c) for l, c in coeffs.items()})

    def element_from(self, coeffs: dict) -> SparseTensor:
        """Rank-1 tensor from {index: coeff}."""
        return SparseTensor(1, {(k,): v for k, v in coeffs.items()})

    def unit(self) -> SparseTensor:
        return SparseTensor(1, {(k,): v for k, v in self.unit_terms.items()}, clean=False)

    def unit_tensor(self, rank: int) -> SparseTensor:
        terms = {}
        items = list(self.unit_terms.items())
        for combo in itertools.product(items, repeat=rank):
            c = self.field.one
            for _, v in combo:
                c = c * v
            terms[tuple(k for k, _ in combo)] = c
        return SparseTensor(rank, terms)

    def delta_one(self) -> SparseTensor:
        if self._delta_one is None:
            self._delta_one = self.apply_comul(self.unit(), 0)
        return self._delta_one

    def zero(self, rank: int) -> SparseTensor:
        return SparseTensor(rank)

    def tensor(self, *factors: SparseTensor) -> SparseTensor:
        """Outer tensor product of tensors."""
        result = factors[0]
        for f in factors[1:]:
            terms = {}
            for ka, va in result.terms.items():
                for kb, vb in f.terms.items():
                    terms[ka + kb] = va * vb
            result = SparseTensor(result.rank + f.rank, terms)
        return result

    # ------------------------------------------------------------------
    # products in tensor powers

    def mul(self, x: SparseTensor, y: SparseTensor, xslots: Sequence[int] | None = None,
            yslots: Sequence[int] | None = None, rank: int | None = None) -> SparseTensor:
        """Product x*y with x placed in ``xslots`` and y in ``yslots`` of a rank-``rank`` power.

        A slot occupied by only one factor keeps that factor's label (the other
        factor is the unit there); a slot occupied by neither is not allowed.
        """
        xslots = tuple(range(x.rank)) if xslots is None else tuple(xslots)
        yslots = tuple(range(y.rank)) if yslots is None else tuple(yslots)
        if rank is None:
            rank = max(xslots + yslots) + 1
        covered = set(xslots) | set(yslots)
        if len(covered) != rank:
            missing = [s for s in range(rank) if s not in covered]
            raise ValueError(f"slots {missing} are not covered by either factor")
        xpos = {s: i for i, s in enumerate(xslots)}
        ypos = {s: i for i, s in enumerate(yslots)}
        both = [s for s in range(rank) if s in xpos and s in ypos]
        xonly = [(s, xpos[s]) for s in range(rank) if s in xpos and s not in ypos]
        yonly = [(s, ypos[s]) for s in range(rank) if s in ypos and s not in xpos]
        bx = [xpos[s] for s in both]
        by = [ypos[s] for s in both]
        lk, rk = self.left_key, self.right_key
        groups: dict = {}
        if lk is not None:
            for ky, cy in y.terms.items():
                sig = tuple(lk[ky[p]] for p in by)
                groups.setdefault(sig, []).append((ky, cy))
        else:
            groups[()] = list(y.terms.items())
        mul_rows = self._mul_rows
        mul_basis = self.mul_basis
        out: dict = {}
        base = [None] * rank
        nb = len(both)
        for kx, cx in x.terms.items():
            sig = tuple(rk[kx[p]] for p in bx) if lk is not None else ()
            cands = groups.get(sig)
            if not cands:
                continue
            for s, p in xonly:
                base[s] = kx[p]
            xl = [kx[p] for p in bx]
            for ky, cy in cands:
                for s, p in yonly:
                    base[s] = ky[p]
                if nb == 1:
                    a = xl[0]
                    b = ky[by[0]]
                    prod = mul_rows[a].get(b)
                    if prod is None:
                        prod = mul_basis(a, b)
                    if not prod:
                        continue
                    c = cx * cy
                    s0 = both[0]
                    for k, v in prod.items():
                        base[s0] = k
                        key = tuple(base)
                        t = c * v
                        old = out.get(key)
                        out[key] = t if old is None else old + t
                    continue
                prods = []
                for a, p in zip(xl, by):
                    b = ky[p]
                    prod = mul_rows[a].get(b)
                    if prod is None:
                        prod = mul_basis(a, b)
                    if not prod:
                        break
                    prods.append(list(prod.items()))
                else:
                    c = cx * cy
                    if nb == 0:
                        key = tuple(base)
                        old = out.get(key)
                        out[key] = c if old is None else old + c
                        continue
                    if nb == 2:
                        s0, s1 = both
                        for k0, v0 in prods[0]:
                            base[s0] = k0
                            c0 = c * v0
                            for k1, v1 in prods[1]:
                                base[s1] = k1
                                key = tuple(base)
                                t = c0 * v1
                                old = out.get(key)
                                out[key] = t if old is None else old + t
                        continue
                    for combo in itertools.product(*prods):
                        t = c
                        for (k, v), s in zip(combo, both):
                            base[s] = k
                            t = t * v
                        key = tuple(base)
                        old = out.get(key)
                        out[key] = t if old is None else old + t
        return SparseTensor(rank, out)

    def mul_many(self, *factors) -> SparseTensor:
        """Product of factors, each either a tensor (full rank) or (tensor, slots)."""
        rank = None
        norm = []
        for f in factors:
            if isinstance(f, SparseTensor):
                norm.append((f, tuple(range(f.rank))))
            else:
                norm.append((f[0], tuple(f[1])))
        rank = max(max(s) for _, s in norm) + 1
        result = None
        slots_acc: tuple = ()
        for t, slots in norm:
            if result is None:
                result, slots_acc = t, slots
                continue
            union = tuple(sorted(set(slots_acc) | set(slots)))
            sub_rank = len(union)
            remap = {s: i for i, s in enumerate(union)}
            result = self.mul(result, t, [remap[s] for s in slots_acc], [remap[s] for s in slots], sub_rank)
            slots_acc = union
        if len(slots_acc) != rank or slots_acc != tuple(range(rank)):
            # fill untouched slots with the unit
            missing = [s for s in range(rank) if s not in slots_acc]
            unit = self.unit_tensor(len(missing))
            result = self.mul(result, unit, slots_acc, missing, rank)
        return result

    # ------------------------------------------------------------------
    # structure maps applied to one slot

    def apply_linear(self, x: SparseTensor, slot: int, fn: Callable[[int], dict]) -> SparseTensor:
        out: dict = {}
        cache: dict = {}
        for key, c in x.terms.items():
            i = key[slot]
            image = cache.get(i)
            if image is None:
                image = fn(i)
                cache[i] = image
            for j, v in image.items():
                nk = key[:slot] + (j,) + key[slot + 1:]
                t = c * v
                old = out.get(nk)
                out[nk] = t if old is None else old + t
        return SparseTensor(x.rank, out)

    def apply_comul(self, x: SparseTensor, slot: int, comul: Callable[[int], dict] | None = None) -> SparseTensor:
        comul = comul or self.comul_basis
        out: dict = {}
        for key, c in x.terms.items():
            head, tail = key[:slot], key[slot + 1:]
            for (a, b), v in comul(key[slot]).items():
                nk = head + (a, b) + tail
                t = c * v
                old = out.get(nk)
                out[nk] = t if old is None else old + t
        return SparseTensor(x.rank + 1, out)

    def apply_counit(self, x: SparseTensor, slot: int, counit: Callable[[int], object] | None = None) -> SparseTensor:
        counit = counit or self.counit_basis
        out: dict = {}
        for key, c in x.terms.items():
            e = counit(key[slot])
            if not e:
                continue
            nk = key[:slot] + key[slot + 1:]
            t = c * e
            old = out.get(nk)
            out[nk] = t if old is None else old + t
        return SparseTensor(x.rank - 1, out)

    def apply_antipode(self, x: SparseTensor, slot: int) -> SparseTensor:
        return self.apply_linear(x, slot, self.antipode_basis)

    def apply_antipode_inv(self, x: SparseTensor, slot: int) -> SparseTensor:
        return self.apply_linear(x, slot, self.antipode_inv_basis)

    def multiply_slots(self, x: SparseTensor, slot: int) -> SparseTensor:
        """Multiply slots ``slot`` and ``slot+1`` together (the map m in that position)."""
        out: dict = {}
        for key, c in x.terms.items():
            head, tail = key[:slot], key[slot + 2:]
            for k, v in self.mul_basis(key[slot], key[slot + 1]).items():
                nk = head + (k,) + tail
                t = c * v
                old = out.get(nk)
                out[nk] = t if old is None else old + t
        return SparseTensor(x.rank - 1, out)

    def comul(self, x: SparseTensor) -> SparseTensor:
        return self.apply_comul(x, 0)

    def counit(self, x: SparseTensor):
        total = self.field.zero
        for (i,), c in x.terms.items():
            total = total + c * self.counit_basis(i)
        return total

    def antipode(self, x: SparseTensor) -> SparseTensor:
        return self.apply_antipode(x, 0)

    def inverse(self, x: SparseTensor) -> SparseTensor | None:
        """Two-sided inverse of x, or None if x is not invertible."""
        from .linalg import solve

        columns = [dict_of(self.mul(x, self.basis_element(j))) for j in range(self.dim)]
        sol = solve(columns, dict(self.unit_terms))
        if sol is None:
            return None
        y = SparseTensor(1, {(j,): v for j, v in sol.items()})
        if self.mul(y, x) != self.unit():
            return None
        return y

    # ------------------------------------------------------------------
    # counital maps

    def eps_t(self, x: SparseTensor) -> SparseTensor:
        """(eps (x) id)(Delta(1)(h (x) 1))."""
        prod = self.mul(self.delta_one(), x, (0, 1), (0,), 2)
        return self.apply_counit(prod, 0)

    def eps_s(self, x: SparseTensor) -> SparseTensor:
        """(id (x) eps)((1 (x) h) Delta(1))."""
        prod = self.mul(x, self.delta_one(), (1,), (0, 1), 2)
        return self.apply_counit(prod, 1)

    # ------------------------------------------------------------------
    # sampling helpers

    def random_element(self, rng: random.Random, terms: int = 3) -> SparseTensor:
        picks = rng.sample(range(self.dim), min(terms, self.dim))
        return SparseTensor(1, {(i,): self.field.random(rng, 3) or self.field.one for i in picks})

    def sample_elements(self, threshold: int, n_random: int, seed: int) -> tuple[list[SparseTensor], bool]:
        """Full basis when dim <= threshold, else generators plus seeded random elements."""
        if self.dim <= threshold:
            return [self.basis_element(i) for i in range(self.dim)], True
        rng = random.Random(seed)
        sample = [SparseTensor(1, {(k,): self.field.coerce(v) for k, v in g.items()}) for g in (self.generators or [])]
        sample += [self.random_element(rng) for _ in range(n_random)]
        return sample, False


def _invert_linear_map(H: WeakHopf, fn: Callable[[int], dict]) -> Callable[[int], dict]:
    """Inverse of a bijective linear endomorphism given on the basis (exact Gauss-Jordan)."""
    from .linalg import solve

    columns = [fn(i) for i in range(H.dim)]
    cache: dict = {}

    def inverse(i: int) -> dict:
        if i not in cache:
            sol = solve(columns, {i: H.field.one})
            if sol is None:
                raise ValueError(f"{H.name}: linear map is not invertible")
            cache[i] = {j: v for j, v in sol.items() if v}
        return cache[i]

    return inverse


def dict_of(x: SparseTensor) -> dict:
    """Rank-1 tensor as {index: coeff}."""
    return {k[0]: v for k, v in x.terms.items()}


# ----------------------------------------------------------------------
# tensor products of structures


def tensor_product(H1: WeakHopf, H2: WeakHopf, name: str | None = None) -> WeakHopf:
    """H1 (x) H2 with factorwise structure; basis index i1 * dim2 + i2."""
    d2 = H2.dim
    labels = [(a, b) for a in H1.labels for b in H2.labels]

    def split(i):
        return divmod(i, d2)

    def mul(i, j):
        a1, b1 = split(i)
        a2, b2 = split(j)
        pa = H1.mul_basis(a1, a2)
        if not pa:
            return {}
        pb = H2.mul_basis(b1, b2)
        return {ka * d2 + kb: va * vb for ka, va in pa.items() for kb, vb in pb.items()}

    def comul(i):
        a, b = split(i)
        out = {}
        for (a1, a2), va in H1.comul_basis(a).items():
            for (b1, b2), vb in H2.comul_basis(b).items():
                out[(a1 * d2 + b1, a2 * d2 + b2)] = va * vb
        return out

    def counit(i):
        a, b = split(i)
        return H1.counit_basis(a) * H2.counit_basis(b)

    def antipode(i):
        a, b = split(i)
        return {ka * d2 + kb: va * vb for ka, va in H1.antipode_basis(a).items() for kb, vb in H2.antipode_basis(b).items()}

    def antipode_inv(i):
        a, b = split(i)
        return {
            ka * d2 + kb: va * vb
            for ka, va in H1.antipode_inv_basis(a).items()
            for kb, vb in H2.antipode_inv_basis(b).items()
        }

    unit = {ka * d2 + kb: va * vb for ka, va in H1.unit_terms.items() for kb, vb in H2.unit_terms.items()}
    lk = rk = None
    if H1.left_key is not None or H2.left_key is not None:
        l1 = H1.left_key or [None] * H1.dim
        r1 = H1.right_key or [None] * H1.dim
        l2 = H2.left_key or [None] * H2.dim
        r2 = H2.right_key or [None] * H2.dim
        lk = [(l1[a], l2[b]) for a in range(H1.dim) for b in range(d2)]
        rk = [(r1[a], r2[b]) for a in range(H1.dim) for b in range(d2)]
    generators = None
    if H1.generators is not None and H2.generators is not None:
        generators = []
        for g in H1.generators:
            generators.append({ka * d2 + kb: va * vb for ka, va in g.items() for kb, vb in H2.unit_terms.items()})
        for g in H2.generators:
            generators.append({ka * d2 + kb: va * vb for ka, va in H1.unit_terms.items() for kb, vb in g.items()})
    return WeakHopf(
        name or f"{H1.name}(x){H2.name}",
        H1.field,
        labels,
        mul=mul,
        unit=unit,
        comul=comul,
        counit=counit,
        antipode=antipode,
        antipode_inv=antipode_inv,
        left_key=lk,
        right_key=rk,
        generators=generators,
    )


def with_comul(H: WeakHopf, name: str, comul: Callable[[int], dict], antipode: Callable[[int], dict],
               antipode_inv: Callable[[int], dict] | None = None) -> WeakHopf:
    """Same algebra and counit as H, new comultiplication and antipode (e.g. a twist)."""
    K = WeakHopf(
        name,
        H.field,
        H.labels,
        mul=H._mul_fn,
        unit=H.unit_terms,
        comul=comul,
        counit=H._counit_fn,
        antipode=antipode,
        antipode_inv=antipode_inv,
        left_key=H.left_key,
        right_key=H.right_key,
        generators=H.generators,
    )
    # share the multiplication cache: same algebra
    K._mul_rows = H._mul_rows
    K._counit_cache = H._counit_cache
    return K
