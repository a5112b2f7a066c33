"""Exact linear algebra over Q(zeta_ell) on sparse rows.

Rows are dicts {column: scalar}.  Elimination is fraction-free: a row is
updated as p*r - a*s with no field division, then its rational content is
stripped so coefficient sizes stay bounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .scalars import CyclotomicScalar


def _strip_content(row: dict) -> dict:
    if not row:
        return row
    num_gcd = 0
    den_lcm = 1
    for v in row.values():
        num_gcd = gcd(num_gcd, *v.num)
        den_lcm = den_lcm * v.den // gcd(den_lcm, v.den)
    factor = Fraction(den_lcm, num_gcd)
    if factor == 1:
        return row
    return {k: v * factor for k, v in row.items()}


def echelon(rows: Iterable[dict]) -> list[tuple[object, dict]]:
    """Row echelon form as a list of (pivot column, row); zero rows are dropped."""
    pivots: list[tuple[object, dict]] = []
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        for col, prow in pivots:
            a = row.get(col)
            if a is None:
                continue
            p = prow[col]
            new = {k: v * p for k, v in row.items() if k != col}
            for k, v in prow.items():
                if k == col:
                    continue
                t = v * a
                if k in new:
                    s = new[k] - t
                    if s:
                        new[k] = s
                    else:
                        del new[k]
                else:
                    new[k] = -t
            row = _strip_content(new)
            if not row:
                break
        if row:
            col = min(row)
            pivots.append((col, _strip_content(row)))
    return pivots


def rank(rows: Iterable[dict]) -> int:
    return len(echelon(rows))


def span_basis(vectors: Iterable[dict]) -> list[dict]:
    return [row for _, row in echelon(vectors)]


def in_span(basis_echelon: list[tuple[object, dict]], vector: dict) -> bool:
    return len(echelon([r for _, r in basis_echelon] + [vector])) == len(basis_echelon)


def solve(columns: Sequence[dict], target: dict):
    """Find coefficients c with sum_j c_j columns[j] = target, or None if impossible.

    Uses ordinary Gauss-Jordan elimination on the augmented system.
    """
    rows_index = sorted({k for col in columns for k in col} | set(target), key=repr)
    n = len(columns)
    matrix = []
    for r in rows_index:
        row = {j: columns[j][r] for j in range(n) if r in columns[j] and columns[j][r]}
        if r in target and target[r]:
            row["rhs"] = target[r]
        matrix.append(row)
    pivot_rows: list[tuple[int, dict]] = []
    for row in matrix:
        for col, prow in pivot_rows:
            a = row.get(col)
            if a is not None:
                row = _axpy(row, prow, -a)
        cols = [k for k in row if k != "rhs"]
        if not cols:
            if row.get("rhs"):
                return None
            continue
        col = min(cols)
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        new_pivots = []
        for c2, r2 in pivot_rows:
            a = r2.get(col)
            if a is not None:
                r2 = _axpy(r2, row, -a)
            new_pivots.append((c2, r2))
        pivot_rows = new_pivots + [(col, row)]
    field = next(iter(target.values())).field if target else None
    solution = {}
    for col, row in pivot_rows:
        if "rhs" in row:
            solution[col] = row["rhs"]
    if field is not None:
        solution = {j: solution.get(j, field.zero) for j in range(n)}
    return solution


def _axpy(row: dict, other: dict, a: CyclotomicScalar) -> dict:
    out = dict(row)
    for k, v in other.items():
        t = v * a
        if k in out:
            s = out[k] + t
            if s:
                out[k] = s
            else:
                del out[k]
        else:
            out[k] = t
    return out
