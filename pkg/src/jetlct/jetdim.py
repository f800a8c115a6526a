"""Exact jet-scheme dimensions of monomial ideals.

A level-m jet of A^n is stratified by the t-orders a_i of its coordinates
(a_i = m + 1 meaning the coordinate is zero). The stratum with orders a lies
in V(I)_m iff <a, b> >= m + 1 for every minimal generator b, and it has
dimension (m + 1) n - sum(a). So dim V(I)_m comes from a small integer
program, solved here by branch-and-bound over exact LP relaxations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .newton import LctCertificate, lct_monomial, polar_program
from .poly import MonomialIdeal
from .simplex import solve_lp

NEG_INF = -math.inf


class CertificateLevelTooLarge(ValueError):
    def __init__(self, level: int, m_max: int):
        super().__init__(f"certificate level {level} exceeds m_max={m_max}")
        self.level = level
        self.m_max = m_max


class CertificateMismatch(AssertionError):
    pass


class OriginNotInY(ValueError):
    pass


class NotPrincipal(ValueError):
    pass


@dataclass(frozen=True)
class StratumIP:
    B: tuple[tuple[int, ...], ...]
    m: int
    fiber_over_origin: bool

    @property
    def n(self) -> int:
        return len(self.B[0])

    @property
    def lower(self) -> int:
        return 1 if self.fiber_over_origin else 0

    def feasible(self, a: Sequence[int]) -> bool:
        top = self.m + 1
        return (all(self.lower <= x <= top for x in a)
                and all(sum(x * y for x, y in zip(a, b)) >= top for b in self.B))


@dataclass(frozen=True)
class JetDimReport:
    m: int
    dim: int | float
    argmin: tuple[int, ...] | None
    fiber_over_origin: bool = False

    @property
    def feasible(self) -> bool:
        return self.argmin is not None

    @property
    def normalized(self) -> Fraction | float:
        if not self.feasible:
            return NEG_INF
        return Fraction(self.dim, self.m + 1)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "dim": "-inf" if not self.feasible else self.dim,
            "argmin": list(self.argmin) if self.feasible else None,
            "normalized": "-inf" if not self.feasible else str(self.normalized),
            "fiber_origin": self.fiber_over_origin,
        }


def _lp_relaxation(ip: StratumIP, lo: list[int], hi: list[int]):
    """LP over a in [lo, hi]; solved in shifted variables y = a - lo >= 0."""
    n = ip.n
    top = ip.m + 1
    A_ge = [list(b) for b in ip.B]
    b_ge = [top - sum(x * y for x, y in zip(b, lo)) for b in ip.B]
    A_le = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    b_le = [h - l for h, l in zip(hi, lo)]
    res = solve_lp([1] * n, A_ge=A_ge, b_ge=b_ge, A_le=A_le, b_le=b_le)
    if not res.optimal:
        return None
    return [y + l for y, l in zip(res.x, lo)], res.value + sum(lo)


def solve_stratum_ip(ip: StratumIP) -> tuple[int, tuple[int, ...]] | None:
    """Minimise sum(a) over integer points of the stratum IP; None if infeasible."""
    n = ip.n
    top = ip.m + 1
    lo0 = [ip.lower] * n
    hi0 = [top] * n
    root = _lp_relaxation(ip, lo0, hi0)
    if root is None:
        return None
    x, _ = root
    best_a = tuple(min(top, math.ceil(v)) for v in x)
    assert ip.feasible(best_a)
    best = sum(best_a)

    stack = [(lo0, hi0)]
    while stack:
        lo, hi = stack.pop()
        relax = _lp_relaxation(ip, lo, hi)
        if relax is None:
            continue
        x, value = relax
        if math.ceil(value) >= best:
            continue
        frac = [(abs(v - math.floor(v) - Fraction(1, 2)), i)
                for i, v in enumerate(x) if v.denominator != 1]
        if not frac:
            best_a = tuple(int(v) for v in x)
            best = sum(best_a)
            continue
        _, i = min(frac)
        v = x[i]
        down_hi = list(hi)
        down_hi[i] = math.floor(v)
        up_lo = list(lo)
        up_lo[i] = math.floor(v) + 1
        # depth-first, down branch explored first
        stack.append((up_lo, hi))
        stack.append((lo, down_hi))
    return best, best_a


def stratum_ip(mi: MonomialIdeal, m: int, fiber_over_origin: bool = False) -> StratumIP:
    return StratumIP(polar_program(mi).B, m, fiber_over_origin)


def jet_dim_monomial(mi: MonomialIdeal, m: int, fiber_over_origin: bool = False) -> JetDimReport:
    """Dimension of V(mi)_m, or of its fiber over the origin."""
    if m < 0:
        raise ValueError("jet level must be >= 0")
    ip = stratum_ip(mi, m, fiber_over_origin)
    sol = solve_stratum_ip(ip)
    if sol is None:
        return JetDimReport(m, NEG_INF, None, fiber_over_origin)
    total, a = sol
    return JetDimReport(m, (m + 1) * mi.ambient_dim - total, a, fiber_over_origin)


@dataclass(frozen=True)
class JetLct:
    lct: Fraction
    level: int
    certificate: LctCertificate
    report: JetDimReport
    swept: int
    bound_violations: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "lct": str(self.lct),
            "certificate_level": self.level,
            "dim": self.report.dim,
            "swept_levels": self.swept,
            "bound_violations": list(self.bound_violations),
        }


def lct_via_jets(mi: MonomialIdeal, m_max: int = 60, sweep: int | None = None) -> JetLct:
    """LCT as n - dim Y_m / (m + 1) at a level where the polar vertex scales to integers.

    Cross-checked against :func:`lct_monomial` (mismatch raises
    CertificateMismatch). Levels 0..sweep (default ``m_max``) are checked
    against dim Y_m <= (m + 1)(n - lct); offending levels are reported.
    """
    cert = lct_monomial(mi)
    n = mi.ambient_dim
    level = cert.denominator_lcm() - 1
    if level > m_max:
        raise CertificateLevelTooLarge(level, m_max)
    report = jet_dim_monomial(mi, level)
    value = n - report.normalized
    if value != cert.lct:
        raise CertificateMismatch(f"jet formula gives {value}, polar LP gives {cert.lct}")
    sweep = m_max if sweep is None else sweep
    bad = []
    for m in range(sweep + 1):
        dim = jet_dim_monomial(mi, m).dim
        if dim > (m + 1) * (n - cert.lct):
            bad.append(m)
    return JetLct(value, level, cert, report, sweep, tuple(bad))


def normalized_dims(mi: MonomialIdeal, m_max: int, fiber_over_origin: bool = False) -> list[JetDimReport]:
    return [jet_dim_monomial(mi, m, fiber_over_origin) for m in range(m_max + 1)]


def lct_origin_via_fibers(mi: MonomialIdeal, m_max: int = 60) -> Fraction:
    """n - max_{m <= m_max} dim(fiber of Y_m over 0) / (m + 1).

    Always >= the LCT; within n / (m_max + 1) of it, and equal to it at the
    certificate level whenever the polar vertex has no zero coordinate.
    """
    if any(not any(b) for b in mi.min_generators):
        raise OriginNotInY("a generator is a unit, so the origin is not on Y")
    best = max(r.normalized for r in normalized_dims(mi, m_max, fiber_over_origin=True))
    return mi.ambient_dim - best


def check_divisor_fiber_bound(mi: MonomialIdeal, m: int) -> bool:
    """dim of the level-m fiber over 0 is at most n*m - floor(m / mult_0)."""
    if len(mi.min_generators) != 1:
        raise NotPrincipal("expected a principal monomial ideal")
    (b,) = mi.min_generators
    a = sum(b)
    if a == 0:
        raise OriginNotInY("the generator is a unit")
    fiber = jet_dim_monomial(mi, m, fiber_over_origin=True)
    return fiber.dim <= mi.ambient_dim * m - m // a
