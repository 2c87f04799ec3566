"""Exact rational simplex (dense tableau, Bland's rule).

Solves   maximize c.x   subject to   A x <= b,  x >= 0
with every number a ``Fraction``.  Rows with negative right-hand side are
handled by a phase-one problem on artificial variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = int | Fraction

ZERO = Fraction(0)


class InfeasibleLP(ValueError):
    pass


class UnboundedLP(ValueError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        inv = 1 / p
        prow[:] = [v * inv if v else v for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    f = obj[c]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]


def _run(rows, obj, basis, allowed: int) -> int:
    """Primal simplex on a feasible tableau; obj holds reduced costs (minimise -c).

    Columns >= ``allowed`` never enter.  Returns the pivot count.
    """
    pivots = 0
    ncols = len(obj) - 1
    while True:
        # Bland: smallest index with negative reduced cost enters
        enter = next((j for j in range(min(ncols, allowed)) if obj[j] < 0), None)
        if enter is None:
            return pivots
        best, leave = None, None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedLP("objective is unbounded")
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter
        pivots += 1


def solve_lp(c: Sequence[Number], A: Sequence[Sequence[Number]], b: Sequence[Number]) -> LPSolution:
    """Maximise c.x over {x >= 0 : A x <= b} exactly."""
    n = len(c)
    m = len(A)
    c = [Fraction(v) for v in c]
    neg = [i for i in range(m) if b[i] < 0]
    width = n + m + len(neg) + 1
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art = n + m
    for i in range(m):
        row = [ZERO] * width
        sign = -1 if b[i] < 0 else 1
        for j, v in enumerate(A[i]):
            if v:
                row[j] = Fraction(v) * sign
        row[n + i] = Fraction(sign)
        row[-1] = Fraction(b[i]) * sign
        if sign < 0:
            row[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(n + i)
        rows.append(row)
    pivots = 0
    if neg:
        # phase one: minimise the sum of artificials
        obj = [ZERO] * width
        for i in neg:
            for j in range(width):
                obj[j] -= rows[i][j]
        for j in range(n + m, n + m + len(neg)):
            obj[j] += 1
        pivots += _run(rows, obj, basis, width - 1)
        if obj[-1] != 0:
            raise InfeasibleLP("constraints are infeasible")
        for i, bv in enumerate(basis):
            if bv >= n + m:
                j = next((j for j in range(n + m) if rows[i][j]), None)
                if j is not None:
                    _pivot(rows, obj, i, j)
                    basis[i] = j
    obj = [ZERO] * width
    for j in range(n):
        obj[j] = -c[j]
    for i, bv in enumerate(basis):
        if bv < n and c[bv]:
            f = obj[bv]
            for j in range(width):
                if rows[i][j]:
                    obj[j] -= f * rows[i][j]
    pivots += _run(rows, obj, basis, n + m)
    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][-1]
    value = sum((c[j] * x[j] for j in range(n)), ZERO)
    return LPSolution(value, tuple(x), pivots)


def check_feasible(A, b, x) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(sum((Fraction(a) * xv for a, xv in zip(row, x)), ZERO) <= bi for row, bi in zip(A, b))
