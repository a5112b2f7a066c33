"""Dual weak Hopf algebras: transposed structure tables and lazy functionals."""

from __future__ import annotations

from .errors import DimensionTooLarge
from .wha import WeakHopf


def dual_wha(H: WeakHopf, threshold: int = 1024, name: str | None = None) -> WeakHopf:
    """H* with <phi psi, h> = <phi (x) psi, Delta h>, <Delta phi, h (x) g> = <phi, hg>.

    The dual basis element phi_i (dual to H's basis element i) gets label ("*", label_i).
    """
    if H.dim > threshold:
        raise DimensionTooLarge(f"dim {H.dim} exceeds the dual-table threshold {threshold}", witness=H.dim)
    field = H.field
    n = H.dim
    product: dict = {}
    for k in range(n):
        for (i, j), v in H.comul_basis(k).items():
            row = product.setdefault((i, j), {})
            row[k] = row[k] + v if k in row else v
    coproduct: dict = {}
    for i in range(n):
        for j in range(n):
            for k, v in H.mul_basis(i, j).items():
                row = coproduct.setdefault(k, {})
                row[(i, j)] = row[(i, j)] + v if (i, j) in row else v
    antipode: dict = {}
    antipode_inv: dict = {}
    for i in range(n):
        for k, v in H.antipode_basis(i).items():
            antipode.setdefault(k, {})[i] = v
        for k, v in H.antipode_inv_basis(i).items():
            antipode_inv.setdefault(k, {})[i] = v
    unit = {k: H.counit_basis(k) for k in range(n)}
    counit_values = H.unit_terms

    return WeakHopf(
        name or f"({H.name})*",
        field,
        [("*", label) for label in H.labels],
        mul=lambda i, j: product.get((i, j), {}),
        unit=unit,
        comul=lambda k: coproduct.get(k, {}),
        counit=lambda k: counit_values.get(k, field.zero),
        antipode=lambda k: antipode.get(k, {}),
        antipode_inv=lambda k: antipode_inv.get(k, {}),
        generators=[{i: field.one} for i in range(n)],
    )


class Functional:
    """A linear functional on H stored by its values on the basis."""

    __slots__ = ("H", "values")

    def __init__(self, H: WeakHopf, values: dict):
        self.H = H
        self.values = {k: v for k, v in values.items() if v}

    def __call__(self, x) -> object:
        total = self.H.field.zero
        for key, c in x.terms.items():
            v = self.values.get(key[0])
            if v is not None:
                total = total + c * v
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, Functional) and self.values == other.values

    def __add__(self, other: "Functional") -> "Functional":
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out[k] + v if k in out else v
        return Functional(self.H, out)

    def scale(self, c) -> "Functional":
        return Functional(self.H, {k: v * c for k, v in self.values.items()})


def delta_functional(H: WeakHopf, i: int) -> Functional:
    return Functional(H, {i: H.field.one})


def counit_functional(H: WeakHopf) -> Functional:
    return Functional(H, {i: H.counit_basis(i) for i in range(H.dim)})


def functional_dual_product(phi: Functional, psi: Functional, H: WeakHopf, opposite: bool = False) -> Functional:
    """<phi psi, h> = <phi (x) psi, Delta h>; with ``opposite`` the factors are swapped."""
    if opposite:
        phi, psi = psi, phi
    out = {}
    for k in range(H.dim):
        total = H.field.zero
        for (i, j), v in H.comul_basis(k).items():
            a = phi.values.get(i)
            if a is None:
                continue
            b = psi.values.get(j)
            if b is None:
                continue
            total = total + v * a * b
        if total:
            out[k] = total
    return Functional(H, out)
