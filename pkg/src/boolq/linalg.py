"""Exact linear algebra over the rationals for integer matrices.

Elimination is fraction-free: rows stay integer vectors and are divided by
their content after every update, so entries stay small on the 0/1 matrices
this package builds. Results are exact; there is no floating point here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer reduced row echelon form.

    Returns ``(rows, pivots)``: each returned row has a positive entry at its
    pivot column and zeros in every other pivot column. Rows are primitive
    (content 1); zero rows are dropped.
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    for r in work:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)}, expected {ncols}")
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = None
        for i in range(top, len(work)):
            if work[i][col]:
                if piv is None or abs(work[i][col]) < abs(work[piv][col]):
                    piv = i
                    if abs(work[i][col]) == 1:
                        break
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        prow = work[top]
        if prow[col] < 0:
            prow = [-v for v in prow]
        prow = _primitive(prow)
        work[top] = prow
        a = prow[col]
        for i in range(len(work)):
            if i == top:
                continue
            b = work[i][col]
            if not b:
                continue
            g = gcd(a, b)
            fa, fb = a // g, b // g
            row = work[i]
            work[i] = _primitive([fa * row[k] - fb * prow[k] for k in range(ncols)])
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer basis of {v : A v = 0}, one primitive vector per free column."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            if row[free]:
                vec[pc] = Fraction(-row[free], row[pc])
        den = lcm(*(v.denominator for v in vec))
        basis.append(_primitive([int(v * den) for v in vec]))
    return basis


def matvec(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(r, v)) for r in rows]
