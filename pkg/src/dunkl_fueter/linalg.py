"""Exact linear algebra over Q by fraction-free Gauss-Jordan elimination.

Rows are scaled to primitive integer vectors before and after every
elimination step, so entries stay integral and small.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .clifford import Rational


def primitive(row: Sequence[int]) -> list[int]:
    """Divide by the content; the first nonzero entry is made positive."""
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
    if g == 0:
        return list(row)
    lead = next(x for x in row if x)
    if lead < 0:
        g = -g
    return [x // g for x in row]


def integer_row(row: Sequence[Rational]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return primitive([int(Fraction(x) * den) for x in row])


def echelon(rows: Sequence[Sequence[Rational]], ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form with integer rows.

    Returns ``(rows, pivots)``; row ``r`` has its pivot in column
    ``pivots[r]`` and zeros in every other pivot column.
    """
    work = [integer_row(r) for r in rows]
    work = [r for r in work if any(r)]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        cand = [i for i in range(top, len(work)) if work[i][c]]
        if not cand:
            continue
        best = min(cand, key=lambda i: abs(work[i][c]))
        work[top], work[best] = work[best], work[top]
        prow = work[top]
        p = prow[c]
        for i in range(len(work)):
            if i != top and work[i][c]:
                f = work[i][c]
                work[i] = primitive([p * x - f * y for x, y in zip(work[i], prow)])
        pivots.append(c)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows: Sequence[Sequence[Rational]], ncols: int | None = None) -> int:
    return len(echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Rational]], ncols: int) -> list[list[int]]:
    """Integer-primitive basis of ``{v : A v = 0}``, one vector per free column."""
    red, pivots = echelon(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            if row[f]:
                v[c] = Fraction(-row[f], row[c])
        basis.append(integer_row(v))
    return basis


def solve(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> list[Fraction] | None:
    """A solution of ``A x = rhs`` (free variables set to zero), or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = echelon(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = Fraction(row[ncols], row[c])
    return x


def transpose(cols: Sequence[Sequence[Rational]], nrows: int) -> list[list[Rational]]:
    return [[col[i] for col in cols] for i in range(nrows)]
