"""Brute-force reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from jetlct.poly import MonomialIdeal


def solve_square(A, b):
    """Exact Gaussian elimination; None if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def lct_by_vertex_enumeration(mi: MonomialIdeal) -> Fraction:
    """min sum(u) over the polar polyhedron by trying every basic solution.

    Constraints are <u, b_j> >= 1 and u_i >= 0; each choice of n of them held
    with equality gives a candidate vertex.
    """
    n = mi.ambient_dim
    rows = [(list(b), 1) for b in mi.min_generators]
    rows += [([1 if k == i else 0 for k in range(n)], 0) for i in range(n)]
    best = None
    for pick in itertools.combinations(rows, n):
        u = solve_square([r for r, _ in pick], [c for _, c in pick])
        if u is None or any(x < 0 for x in u):
            continue
        if any(sum(a * x for a, x in zip(b, u)) < 1 for b in mi.min_generators):
            continue
        s = sum(u)
        if best is None or s < best:
            best = s
    return best


def stratum_min_by_enumeration(mi: MonomialIdeal, m: int, lower: int = 0):
    """min sum(a) over the integer box [lower, m+1]^n with <a, b> >= m+1 for all b."""
    top = m + 1
    best = None
    for a in itertools.product(range(lower, top + 1), repeat=mi.ambient_dim):
        if all(sum(x * y for x, y in zip(a, b)) >= top for b in mi.min_generators):
            s = sum(a)
            if best is None or s < best:
                best = s
    return best


def count_by_enumeration(ideal, p: int, m: int, fiber_over_origin: bool = False) -> int:
    """Count arcs mod t^(m+1) on V(ideal) over F_p by evaluating every truncated arc."""
    n = ideal.ambient_dim
    gens = [{e: (c.numerator * pow(c.denominator, -1, p)) % p for e, c in g.coeffs.items()}
            for g in ideal.generators]

    def mul(a, b):
        out = [0] * (m + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(m + 1 - i):
                    out[i + j] = (out[i + j] + x * b[j]) % p
        return out

    total = 0
    for flat in itertools.product(range(p), repeat=n * (m + 1)):
        arc = [list(flat[i * (m + 1):(i + 1) * (m + 1)]) for i in range(n)]
        if fiber_over_origin and any(a[0] for a in arc):
            continue
        ok = True
        for g in gens:
            acc = [0] * (m + 1)
            for e, c in g.items():
                term = [c] + [0] * m
                for i, k in enumerate(e):
                    for _ in range(k):
                        term = mul(term, arc[i])
                acc = [(x + y) % p for x, y in zip(acc, term)]
            if any(acc):
                ok = False
                break
        total += ok
    return total
