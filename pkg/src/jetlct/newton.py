"""Newton polyhedra of monomial ideals and the log canonical threshold.

For a monomial ideal I with minimal generators b_1..b_g the Newton polyhedron
is P_I = conv(b_j) + R_{>=0}^n, because the exponent set of I is closed under
adding nonnegative vectors. A vector u >= 0 satisfies <u, v> >= 1 on all of
P_I as soon as it does on the b_j (the cone part only increases <u, v>), so
the polar P_I° is cut out by the g generator rows alone. The LCT is the
minimum of sum(u) over that polar, equivalently the largest r with
(1, ..., 1) in r * P_I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import MonomialIdeal, UnitIdeal
from .simplex import lex_min_optimum, solve_lp

INF = math.inf


@dataclass(frozen=True)
class PolarProgram:
    n: int
    B: tuple[tuple[int, ...], ...]

    def is_feasible(self, u) -> bool:
        return all(x >= 0 for x in u) and all(
            sum(Fraction(a) * x for a, x in zip(row, u)) >= 1 for row in self.B)


@dataclass(frozen=True)
class LctCertificate:
    lct: Fraction
    vertex: tuple[Fraction, ...]
    tight_rows: tuple[int, ...]

    def denominator_lcm(self) -> int:
        return math.lcm(*(x.denominator for x in self.vertex))

    def to_json(self) -> dict:
        return {
            "lct": str(self.lct),
            "vertex": [str(x) for x in self.vertex],
            "tight_generators": list(self.tight_rows),
        }


def polar_program(mi: MonomialIdeal) -> PolarProgram:
    if mi.is_unit:
        raise UnitIdeal("the unit ideal defines the empty subscheme")
    return PolarProgram(mi.ambient_dim, tuple(tuple(b) for b in mi.min_generators))


def lct_monomial(mi: MonomialIdeal) -> LctCertificate:
    """Exact LCT of (A^n, V(mi)) with the lexicographically smallest optimal polar vertex."""
    prog = polar_program(mi)
    n = prog.n
    res = lex_min_optimum([1] * n, A_ge=prog.B, b_ge=[1] * len(prog.B))
    if not res.optimal:
        raise RuntimeError(f"polar program unexpectedly {res.status}")
    # an optimal vertex already lies in [0,1]^n: clamping coordinates above 1
    # stays feasible and would lower the objective
    u = tuple(min(x, Fraction(1)) for x in res.x)
    assert sum(u) == res.value
    tight = tuple(j for j, row in enumerate(prog.B) if sum(a * x for a, x in zip(row, u)) == 1)
    return LctCertificate(res.value, u, tight)


def lct_value(mi: MonomialIdeal) -> Fraction | float:
    """LCT as a number, with ``INF`` for the unit ideal (empty subscheme)."""
    if mi.is_unit:
        return INF
    return lct_monomial(mi).lct


def point_in_scaled_polytope(mi: MonomialIdeal, r: Fraction) -> bool:
    """Decide (1, ..., 1) in r * P_I by an exact feasibility LP.

    Variables are convex weights lambda_j and slacks s_i >= 0 with
    sum(lambda) = 1 and sum_j lambda_j b_j + s = e / r.
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    n = mi.ambient_dim
    gens = mi.min_generators
    g = len(gens)
    A_eq = [[1] * g + [0] * n]
    b_eq = [1]
    for i in range(n):
        A_eq.append([b[i] for b in gens] + [1 if k == i else 0 for k in range(n)])
        b_eq.append(1 / r)
    return solve_lp([0] * (g + n), A_eq=A_eq, b_eq=b_eq).optimal


def sup_scaled_membership(mi: MonomialIdeal, max_denominator: int = 64) -> Fraction:
    """Largest r with e in r * P_I, found by bisection plus best rational approximation.

    Works only through :func:`point_in_scaled_polytope`, so it checks the LCT
    LP from the primal side. Exact when the true value has denominator at most
    ``max_denominator``.
    """
    hi = Fraction(mi.ambient_dim * 2)
    lo = Fraction(0)
    while point_in_scaled_polytope(mi, hi):
        hi *= 2
    # bracket width below 1/(2 q^2) pins down the unique fraction with denominator <= q
    target = Fraction(1, 2 * max_denominator ** 2)
    while hi - lo > target:
        mid = (lo + hi) / 2
        if point_in_scaled_polytope(mi, mid):
            lo = mid
        else:
            hi = mid
    for q in range(1, max_denominator + 1):
        p = math.floor(hi * q)
        cand = Fraction(p, q)
        if lo <= cand <= hi and point_in_scaled_polytope(mi, cand):
            return cand
    return lo
