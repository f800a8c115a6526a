"""Finite-field jet point counts: an independent check on the exact dimensions.

Counts of F_p[t]/(t^{m+1})-points of V(I) are exact. Dimensions read off
them (``round(log_p count)``) are estimates: the field is F_p rather than C
and point counts only approximate p^dim.

Two exact counters are provided:

* :func:`count_lifting` extends every level-(m-1) solution by all p^n choices
  of the next coefficients, checking the new t^m equations. Simple and
  obviously right, but it visits count(m-1) * p^n candidates.
* :func:`count_solutions` is a branch-and-peel counter for an arbitrary
  polynomial system over F_p. A variable that occurs in exactly one equation,
  linearly with a unit constant coefficient, is solved for (factor 1); a
  variable in no equation is free (factor p); a one-variable monomial
  equation sets that variable to 0; variable-disjoint blocks are counted
  separately; a monomial equation is split by inclusion-exclusion over its
  variables; otherwise the lowest-order variable is branched on. Subsystems
  are memoized up to scaling of each equation.
  Counting a truncated arc system from the top order downwards, most
  variables are peeled rather than enumerated.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .jets import Convention, arc_coefficients, build_jet_system, jet_index
from .poly import Ideal, Polynomial, parse_ideal

DEFAULT_BUDGET = 10 ** 8

# sparse monomial: tuple of (variable, exponent) pairs sorted by variable
Mono = tuple[tuple[int, int], ...]


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: FpCountReport | None = None):
        super().__init__(message)
        self.partial = partial


class Inconclusive(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("JETLCT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


class FpPolynomial:
    """Polynomial over F_p stored sparsely as {monomial: coefficient in [1, p)}."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[Mono, int]):
        self.p = p
        self.terms = {k: v % p for k, v in terms.items() if v % p}

    @classmethod
    def reduce(cls, poly: Polynomial, p: int) -> FpPolynomial:
        terms: dict[Mono, int] = {}
        for exp, c in poly.coeffs.items():
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} is not defined modulo {p}")
            mono = tuple((i, k) for i, k in enumerate(exp) if k)
            terms[mono] = (c.numerator * pow(c.denominator, -1, p)) % p
        return cls(p, terms)

    def variables(self) -> set[int]:
        return {v for mono in self.terms for v, _ in mono}

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> int | None:
        """The value if the polynomial is constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def substitute(self, var: int, value: int) -> FpPolynomial:
        p = self.p
        out: dict[Mono, int] = {}
        for mono, c in self.terms.items():
            rest = []
            for v, k in mono:
                if v == var:
                    c = c * pow(value, k, p) % p
                else:
                    rest.append((v, k))
            if c:
                key = tuple(rest)
                out[key] = (out.get(key, 0) + c) % p
        return FpPolynomial(p, out)

    def evaluate(self, point: dict[int, int] | Sequence[int]) -> int:
        p = self.p
        total = 0
        for mono, c in self.terms.items():
            for v, k in mono:
                c = c * pow(point[v], k, p) % p
            total += c
        return total % p

    def unit_linear_coefficient(self, var: int) -> int | None:
        """c if the polynomial is c*var + (terms free of var) with c a constant, else None."""
        coeff = None
        for mono, c in self.terms.items():
            for v, k in mono:
                if v == var:
                    if k != 1 or len(mono) != 1:
                        return None
                    coeff = c
        return coeff


@dataclass
class _Counter:
    p: int
    rank: dict[int, int]
    budget: int
    visited: int = 0
    memo: dict = field(default_factory=dict)

    def _tick(self) -> None:
        self.visited += 1
        if self.visited > self.budget:
            raise BudgetExceeded(f"visited more than {self.budget} candidates")

    def count(self, eqs: list[FpPolynomial], free: frozenset[int]) -> int:
        p = self.p
        eqs = [e for e in eqs if not e.is_zero()]
        for e in eqs:
            c = e.constant()
            if c is not None and c != 0:
                return 0
        eqs = [e for e in eqs if e.constant() is None]

        # a single-variable monomial c*v^k forces v = 0
        for e in eqs:
            if len(e.terms) == 1:
                (mono,) = e.terms
                if len(mono) == 1:
                    v = mono[0][0]
                    return self.count([q.substitute(v, 0) for q in eqs], free - {v})

        # peel: solve for a variable occurring once, linearly with unit coefficient
        changed = True
        while changed and eqs:
            changed = False
            occurs: dict[int, list[int]] = {}
            for idx, e in enumerate(eqs):
                for v in e.variables():
                    occurs.setdefault(v, []).append(idx)
            for v in sorted(occurs, key=lambda v: -self.rank[v]):
                if len(occurs[v]) != 1:
                    continue
                idx = occurs[v][0]
                if eqs[idx].unit_linear_coefficient(v) is not None:
                    del eqs[idx]
                    free = free - {v}
                    changed = True
                    break
        used: set[int] = set()
        for e in eqs:
            used |= e.variables()
        factor = p ** len(free - used)
        if not eqs:
            return factor
        return factor * self._count_closed(eqs)

    def _count_closed(self, eqs: list[FpPolynomial]) -> int:
        """Count over exactly the variables occurring in eqs."""
        key = _system_key(eqs)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self._count_uncached(eqs)
        self.memo[key] = result
        return result

    def _count_uncached(self, eqs: list[FpPolynomial]) -> int:
        p = self.p
        free = frozenset().union(*(e.variables() for e in eqs))
        comps = _components(eqs)
        if len(comps) > 1:
            total = 1
            for comp in comps:
                sub = self._count_closed(comp)
                if not sub:
                    return 0
                total *= sub
            return total

        # a monomial equation: the zero set is the union of {v = 0}; inclusion-exclusion
        monomials = [e for e in eqs if len(e.terms) == 1]
        if monomials:
            e = min(monomials, key=lambda q: len(next(iter(q.terms))))
            others = [q for q in eqs if q is not e]
            mono_vars = [v for v, _ in next(iter(e.terms))]
            total = 0
            for size in range(1, len(mono_vars) + 1):
                for subset in itertools.combinations(mono_vars, size):
                    self._tick()
                    sub = others
                    for v in subset:
                        sub = [q.substitute(v, 0) for q in sub]
                    total += (-1) ** (size + 1) * self.count(sub, free - set(subset))
            return total

        var = min(free, key=lambda v: self.rank[v])
        rest = free - {var}
        total = 0
        for value in range(p):
            self._tick()
            total += self.count([e.substitute(var, value) for e in eqs], rest)
        return total


def _system_key(eqs: list[FpPolynomial]) -> frozenset:
    """Canonical form of a system up to scaling each equation."""
    out = set()
    for e in eqs:
        lead = max(e.terms)
        inv = pow(e.terms[lead], -1, e.p)
        out.add(tuple(sorted((m, c * inv % e.p) for m, c in e.terms.items())))
    return frozenset(out)


def _components(eqs: list[FpPolynomial]) -> list[list[FpPolynomial]]:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    var_sets = [e.variables() for e in eqs]
    for vs in var_sets:
        it = iter(vs)
        first = next(it)
        for v in it:
            parent[find(v)] = find(first)
    groups: dict[int, list[FpPolynomial]] = {}
    for e, vs in zip(eqs, var_sets):
        groups.setdefault(find(next(iter(vs))), []).append(e)
    return list(groups.values())


def _prepare(polys, p: int, fixed: dict[int, int] | None) -> list[FpPolynomial]:
    eqs = [q if isinstance(q, FpPolynomial) else FpPolynomial.reduce(q, p) for q in polys]
    for v, val in (fixed or {}).items():
        eqs = [e.substitute(v, val) for e in eqs]
    return eqs


def count_solutions(polys: Iterable[Polynomial | FpPolynomial], nvars: int, p: int,
                    fixed: dict[int, int] | None = None, order: Sequence[int] | None = None,
                    budget: int | None = None) -> int:
    """Number of points of F_p^nvars (minus fixed coordinates) where all polys vanish.

    ``order`` lists variables in preferred branching order (earliest first).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fixed = fixed or {}
    order = list(order) if order is not None else list(range(nvars))
    counter = _Counter(p, {v: r for r, v in enumerate(order)},
                       default_budget() if budget is None else budget)
    return counter.count(_prepare(polys, p, fixed), frozenset(range(nvars)) - set(fixed))


def jet_order(n: int, m: int) -> list[int]:
    """Jet variables ordered by t-order, then base index."""
    return [jet_index(i, j, m) for j in range(m + 1) for i in range(n)]


def origin_fixing(n: int, m: int) -> dict[int, int]:
    return {jet_index(i, 0, m): 0 for i in range(n)}


def count_jet_system(ideal: Ideal, m: int, p: int, fiber_over_origin: bool = False,
                     convention: Convention = Convention.COEFFICIENT,
                     budget: int | None = None) -> int:
    """Exact number of F_p-points of the level-m jet system (or its fiber over 0)."""
    n = ideal.ambient_dim
    if Convention(convention) is Convention.DERIVATION and p <= m:
        # D^j f carries a factor j! that vanishes mod p once j >= p
        raise ValueError(f"derivation convention needs p > m (got p={p}, m={m})")
    system = build_jet_system(ideal, m, convention)
    fixed = origin_fixing(n, m) if fiber_over_origin else None
    return count_solutions(system.generators, n * (m + 1), p, fixed=fixed,
                           order=jet_order(n, m), budget=budget)


def est_dim(count: int, p: int) -> int | None:
    """round(log_p count) in exact integer arithmetic; None when count is 0."""
    if count <= 0:
        return None
    # k = round(log_p c)  <=>  p^(2k-1) <= c^2 < p^(2k+1)
    c2 = count * count
    k = 0
    while p ** (2 * k + 1) <= c2:
        k += 1
    return k


@dataclass(frozen=True)
class LevelCount:
    m: int
    count: int
    est_dim: int | None

    @property
    def normalized(self) -> Fraction | None:
        return None if self.est_dim is None else Fraction(self.est_dim, self.m + 1)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "count": self.count,
            "est_dim": self.est_dim,
            "normalized": None if self.normalized is None else str(self.normalized),
        }


@dataclass(frozen=True)
class FpCountReport:
    p: int
    levels: tuple[LevelCount, ...]
    fiber_over_origin: bool = False
    method: str = "peel"

    def est_dims(self) -> list[int | None]:
        return [lv.est_dim for lv in self.levels]

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "fiber_origin": self.fiber_over_origin,
            "method": self.method,
            "levels": [lv.to_json() for lv in self.levels],
        }


def _check_inputs(ideal: Ideal, p: int, m_max: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m_max < 0:
        raise ValueError("m_max must be >= 0")


def count_jet_points(ideal: Ideal, p: int, m_max: int, fiber_over_origin: bool = False,
                     budget: int | None = None, method: str = "peel") -> FpCountReport:
    """Exact F_p jet-point counts of V(ideal) at levels 0..m_max."""
    _check_inputs(ideal, p, m_max)
    if method == "lift":
        return count_lifting(ideal, p, m_max, fiber_over_origin, budget)
    if method != "peel":
        raise ValueError(f"unknown counting method {method!r}")
    budget = default_budget() if budget is None else budget
    n = ideal.ambient_dim
    counter = _Counter(p, {}, budget)
    levels: list[LevelCount] = []
    for m in range(m_max + 1):
        eqs = []
        for f in ideal.generators:
            eqs.extend(arc_coefficients(f, m))
        fixed = origin_fixing(n, m) if fiber_over_origin else {}
        counter.rank = {v: r for r, v in enumerate(jet_order(n, m))}
        free = frozenset(range(n * (m + 1))) - set(fixed)
        try:
            c = counter.count(_prepare(eqs, p, fixed), free)
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), FpCountReport(p, tuple(levels), fiber_over_origin)) from None
        levels.append(LevelCount(m, c, est_dim(c, p)))
    return FpCountReport(p, tuple(levels), fiber_over_origin)


def count_lifting(ideal: Ideal, p: int, m_max: int, fiber_over_origin: bool = False,
                  budget: int | None = None) -> FpCountReport:
    """Level-by-level arc lifting; every candidate extension is tested."""
    _check_inputs(ideal, p, m_max)
    budget = default_budget() if budget is None else budget
    n = ideal.ambient_dim
    # coefficient equations do not depend on the truncation, so build them once
    eqs = [[FpPolynomial.reduce(c, p) for c in arc_coefficients(f, m_max)] for f in ideal.generators]
    index = {jet_index(i, j, m_max): (j, i) for i in range(n) for j in range(m_max + 1)}
    solutions: list[tuple[tuple[int, ...], ...]] = [()]
    levels: list[LevelCount] = []
    visited = 0
    for m in range(m_max + 1):
        choices = [(0,) * n] if (fiber_over_origin and m == 0) else itertools.product(range(p), repeat=n)
        choices = list(choices)
        nxt = []
        for sol in solutions:
            for new in choices:
                visited += 1
                if visited > budget:
                    raise BudgetExceeded(f"visited more than {budget} candidates",
                                         FpCountReport(p, tuple(levels), fiber_over_origin, "lift"))
                cand = sol + (new,)
                point = {k: cand[j][i] for k, (j, i) in index.items() if j <= m}
                if all(gen[m].evaluate(point) == 0 for gen in eqs):
                    nxt.append(cand)
        solutions = nxt
        levels.append(LevelCount(m, len(solutions), est_dim(len(solutions), p)))
    return FpCountReport(p, tuple(levels), fiber_over_origin, "lift")


SLOPE_TOLERANCE = 0.25


@dataclass(frozen=True)
class LevelEstimate:
    """Dimension estimate at one level, pooled over all primes.

    With one prime this is round(log_p count). With several, log(count) is
    fitted against log(p) by least squares and the slope rounded; the level
    counts as agreeing when the slope is within SLOPE_TOLERANCE of an
    integer. Pooling cancels the number of top-dimensional components,
    which a single small prime cannot separate from a dimension jump.
    """

    m: int
    counts: tuple[int, ...]
    per_prime: tuple[int | None, ...]
    slope: float | None
    dim: int | None
    agree: bool

    @property
    def normalized(self) -> Fraction | None:
        return None if self.dim is None else Fraction(self.dim, self.m + 1)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "count": list(self.counts),
            "est_dim": self.dim,
            "per_prime_est_dim": list(self.per_prime),
            "slope": self.slope,
            "agree": self.agree,
        }


def pool_level(m: int, counts: Sequence[int], primes: Sequence[int]) -> LevelEstimate:
    counts = tuple(counts)
    per_prime = tuple(est_dim(c, p) for c, p in zip(counts, primes))
    if all(c == 0 for c in counts):
        return LevelEstimate(m, counts, per_prime, None, None, True)
    if any(c == 0 for c in counts):
        return LevelEstimate(m, counts, per_prime, None, None, False)
    if len(counts) == 1:
        return LevelEstimate(m, counts, per_prime, None, per_prime[0], True)
    xs = [math.log(p) for p in primes]
    ys = [math.log(c) for c in counts]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("primes must be distinct")
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    dim = max(0, round(slope))
    return LevelEstimate(m, counts, per_prime, slope, dim, abs(slope - dim) <= SLOPE_TOLERANCE)


@dataclass(frozen=True)
class LctEstimate:
    est: Fraction | float
    reports: tuple[FpCountReport, ...]
    levels: tuple[LevelEstimate, ...]
    best_level: int | None
    m_max: int
    ambient_dim: int
    fiber_over_origin: bool = False

    @property
    def agreeing_levels(self) -> tuple[int, ...]:
        return tuple(lv.m for lv in self.levels if lv.agree)

    @property
    def disagreeing_levels(self) -> tuple[int, ...]:
        return tuple(lv.m for lv in self.levels if not lv.agree)

    def to_json(self) -> dict:
        inf = isinstance(self.est, float)
        return {
            "kind": "estimate",
            "ambient_dim": self.ambient_dim,
            "m_max": self.m_max,
            "fiber_origin": self.fiber_over_origin,
            "est_lct": "inf" if inf else str(self.est),
            "est_lct_float": None if inf else float(self.est),
            "best_level": self.best_level,
            "agreeing_levels": list(self.agreeing_levels),
            "disagreeing_levels": list(self.disagreeing_levels),
            "levels": [lv.to_json() for lv in self.levels],
            "primes": [r.to_json() for r in self.reports],
        }


def estimate_from_reports(reports: Sequence[FpCountReport], ambient_dim: int) -> LctEstimate:
    m_max = min(len(r.levels) for r in reports) - 1
    primes = [r.p for r in reports]
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    levels = [pool_level(m, [r.levels[m].count for r in reports], primes) for m in range(m_max + 1)]
    if not any(lv.agree for lv in levels):
        raise Inconclusive("no level gives a consistent dimension across the primes")
    best: Fraction | None = None
    best_level = None
    for lv in levels:
        if lv.agree and lv.dim is not None and (best is None or lv.normalized > best):
            best, best_level = lv.normalized, lv.m
    est = math.inf if best is None else ambient_dim - best
    return LctEstimate(est, tuple(reports), tuple(levels), best_level, m_max, ambient_dim,
                       reports[0].fiber_over_origin)


def estimate_lct(ideal: Ideal, primes: Sequence[int], m_max: int, fiber_over_origin: bool = False,
                 budget: int | None = None) -> LctEstimate:
    """n - max_m dim(m)/(m+1) over the levels where the primes agree (see LevelEstimate)."""
    if not primes:
        raise ValueError("at least one prime is required")
    reports = [count_jet_points(ideal, p, m_max, fiber_over_origin, budget) for p in primes]
    return estimate_from_reports(reports, ideal.ambient_dim)


CUSP = "u^2 - v^3"


def cusp_recursion_check(p: int, m_max: int = 8, budget: int | None = None) -> bool:
    """est_dim(m) == est_dim(m - 6) + 7 for 6 <= m <= m_max on the cusp u^2 = v^3."""
    report = count_jet_points(parse_ideal(CUSP), p, m_max, budget=budget)
    dims = report.est_dims()
    return all(d is not None for d in dims) and all(
        dims[m] == dims[m - 6] + 7 for m in range(6, m_max + 1))
