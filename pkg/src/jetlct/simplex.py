"""Exact rational two-phase simplex with Bland's rule.

Solves ``min c.x`` subject to ``A_ge x >= b_ge``, ``A_le x <= b_le``,
``A_eq x == b_eq`` and ``x >= 0``. Everything is computed in Fractions, so the
returned optimum and vertex are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

Matrix = Sequence[Sequence[Fraction | int]]


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        piv = row[col]
        if piv != 1:
            inv = 1 / piv
            row[:] = [v * inv for v in row]
            self.rhs[r] *= inv
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[col]
            if f:
                other[:] = [a - f * b for a, b in zip(other, row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = col

    def reduced_costs(self, cost: list[Fraction]) -> tuple[list[Fraction], Fraction]:
        red = list(cost)
        obj = Fraction(0)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                red = [d - cb * a for d, a in zip(red, row)]
                obj += cb * self.rhs[r]
        return red, obj

    def run(self, cost: list[Fraction], allowed: int) -> str:
        """Minimise ``cost`` using columns ``< allowed`` as entering candidates."""
        while True:
            red, _ = self.reduced_costs(cost)
            entering = next((j for j in range(allowed) if red[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)


def solve_lp(c: Sequence, A_ge: Matrix = (), b_ge: Sequence = (),
             A_le: Matrix = (), b_le: Sequence = (),
             A_eq: Matrix = (), b_eq: Sequence = ()) -> LPResult:
    n = len(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_slack = len(A_ge) + len(A_le)
    slack = 0
    for A, b, sign in ((A_ge, b_ge, -1), (A_le, b_le, 1), (A_eq, b_eq, 0)):
        for a_row, bi in zip(A, b):
            if len(a_row) != n:
                raise ValueError("constraint row has wrong length")
            row = [Fraction(v) for v in a_row] + [Fraction(0)] * n_slack
            if sign:
                row[n + slack] = Fraction(sign)
                slack += 1
            bi = Fraction(bi)
            if bi < 0:
                row = [-v for v in row]
                bi = -bi
            rows.append(row)
            rhs.append(bi)
    m = len(rows)
    width = n + n_slack
    if m == 0:
        if any(Fraction(v) < 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    # phase 1: artificial basis
    for r, row in enumerate(rows):
        row.extend(Fraction(1 if k == r else 0) for k in range(m))
    tab = _Tableau(rows, rhs, [width + r for r in range(m)])
    phase1 = [Fraction(0)] * width + [Fraction(1)] * m
    tab.run(phase1, width + m)
    if sum(tab.rhs[r] for r, b in enumerate(tab.basis) if b >= width) > 0:
        return LPResult(INFEASIBLE)

    # drive remaining (zero-level) artificials out; drop redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= width:
            col = next((j for j in range(width) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    for row in tab.rows:
        del row[width:]

    cost = [Fraction(v) for v in c] + [Fraction(0)] * n_slack
    status = tab.run(cost, width)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * width
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x[:n])), Fraction(0))
    return LPResult(OPTIMAL, tuple(x[:n]), value)


def lex_min_optimum(c: Sequence, A_ge: Matrix = (), b_ge: Sequence = (),
                    A_le: Matrix = (), b_le: Sequence = (),
                    A_eq: Matrix = (), b_eq: Sequence = ()) -> LPResult:
    """Optimal solution that is lexicographically smallest among all optima."""
    res = solve_lp(c, A_ge, b_ge, A_le, b_le, A_eq, b_eq)
    if not res.optimal:
        return res
    n = len(c)
    A_eq = [list(r) for r in A_eq] + [list(c)]
    b_eq = list(b_eq) + [res.value]
    x = res.x
    for i in range(n):
        unit = [1 if k == i else 0 for k in range(n)]
        sub = solve_lp(unit, A_ge, b_ge, A_le, b_le, A_eq, b_eq)
        A_eq.append(unit)
        b_eq.append(sub.value)
        x = sub.x
    return LPResult(OPTIMAL, x, res.value)
