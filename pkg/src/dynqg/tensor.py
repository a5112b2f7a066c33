"""Sparse tensors over a finite basis.

A :class:`SparseTensor` of rank n maps n-tuples of basis indices to nonzero
scalars.  Algebra-dependent operations (products, coproducts) live on the
structure classes in :mod:`dynqg.wha`; here we only keep the linear ones.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class SparseTensor:
    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict | None = None, clean: bool = True):
        self.rank = rank
        if terms is None:
            self.terms = {}
        elif clean:
            self.terms = {k: v for k, v in terms.items() if v}
        else:
            self.terms = terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def copy(self) -> "SparseTensor":
        return SparseTensor(self.rank, dict(self.terms), clean=False)

    def coeff(self, key, default=None):
        return self.terms.get(key, default)

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return SparseTensor(self.rank, out, clean=False)

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] - v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = -v
        return SparseTensor(self.rank, out, clean=False)

    def __neg__(self) -> "SparseTensor":
        return SparseTensor(self.rank, {k: -v for k, v in self.terms.items()}, clean=False)

    def scale(self, c) -> "SparseTensor":
        if not c:
            return SparseTensor(self.rank)
        return SparseTensor(self.rank, {k: v * c for k, v in self.terms.items()}, clean=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        raise TypeError("SparseTensor is mutable-by-convention and unhashable")

    def permute(self, order: Sequence[int]) -> "SparseTensor":
        """Slot s of the result holds slot order[s] of self."""
        return SparseTensor(self.rank, {tuple(k[i] for i in order): v for k, v in self.terms.items()}, clean=False)

    def flip(self) -> "SparseTensor":
        return self.permute((1, 0))

    def first_difference(self, other: "SparseTensor"):
        """Smallest key where the two tensors differ, or None."""
        keys = set(self.terms) | set(other.terms)
        for k in sorted(keys):
            if self.terms.get(k) != other.terms.get(k):
                return k
        return None

    def __repr__(self) -> str:
        return f"SparseTensor(rank={self.rank}, terms={len(self.terms)})"


def accumulate(out: dict, key, value) -> None:
    if key in out:
        out[key] = out[key] + value
    else:
        out[key] = value


def from_pairs(rank: int, pairs: Iterable) -> SparseTensor:
    out: dict = {}
    for k, v in pairs:
        accumulate(out, k, v)
    return SparseTensor(rank, out)
