"""Groupoid algebras kG as weak Hopf algebras."""

from __future__ import annotations

from typing import Sequence

from .errors import NotAGroupoid
from .scalars import CyclotomicField, make_field
from .wha import WeakHopf


def groupoid_fixture(n_objects: int, arrows: Sequence[tuple] | None = None, group_order: int = 1,
                     field: CyclotomicField | None = None, name: str | None = None) -> WeakHopf:
    """kG for a groupoid whose arrows are triples (source, target, g), g in Z/group_order.

    Composition (b -> c, h) o (a -> b, g) = (a -> c, g + h).  With ``arrows``
    omitted every pair of objects is joined by one arrow per group element.
    Basis order is the sorted arrow list; the product g*f is g o f when defined.
    """
    field = field or make_field(3)
    k = group_order
    if arrows is None:
        arrows = [(s, t, g) for t in range(n_objects) for s in range(n_objects) for g in range(k)]
    arrows = sorted({(int(s), int(t), int(g) % k) for s, t, g in arrows})
    present = set(arrows)
    for s, t, g in arrows:
        if not (0 <= s < n_objects and 0 <= t < n_objects):
            raise NotAGroupoid(f"arrow {(s, t, g)} has an unknown endpoint", witness=(s, t, g))
        if (t, s, (-g) % k) not in present:
            raise NotAGroupoid(f"arrow {(s, t, g)} has no inverse", witness=(s, t, g))
    for x in range(n_objects):
        if (x, x, 0) not in present:
            raise NotAGroupoid(f"object {x} has no identity", witness=x)
    for s1, t1, g1 in arrows:
        for s2, t2, g2 in arrows:
            if t1 == s2 and (s1, t2, (g1 + g2) % k) not in present:
                raise NotAGroupoid("arrows are not closed under composition", witness=((s1, t1, g1), (s2, t2, g2)))
    index = {a: i for i, a in enumerate(arrows)}
    one = field.one

    def mul(i, j):
        s_g, t_g, g = arrows[i]
        s_f, t_f, f = arrows[j]
        if s_g != t_f:
            return {}
        return {index[(s_f, t_g, (g + f) % k)]: one}

    def inverse(i):
        s, t, g = arrows[i]
        return {index[(t, s, (-g) % k)]: one}

    return WeakHopf(
        name or f"kG[{n_objects} objects, Z/{k}]",
        field,
        arrows,
        mul=mul,
        unit={index[(x, x, 0)]: one for x in range(n_objects)},
        comul=lambda i: {(i, i): one},
        counit=lambda i: one,
        antipode=inverse,
        antipode_inv=inverse,
        left_key=[t for s, t, g in arrows],
        right_key=[s for s, t, g in arrows],
        generators=[{i: one} for i in range(len(arrows))],
    )
