"""Jet systems: equations of the level-m jet scheme of an affine scheme.

Jet variable X_i^{(j)} (0 <= j <= m) of an ideal in n variables lives at the
flattened index ``i * (m + 1) + j`` of a polynomial ring in n(m+1) variables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Exponent, Ideal, Polynomial


class Convention(enum.Enum):
    DERIVATION = "derivation"
    COEFFICIENT = "coefficient"


def jet_index(i: int, j: int, m: int) -> int:
    return i * (m + 1) + j


def jet_var(index: int, m: int) -> tuple[int, int]:
    """Inverse of :func:`jet_index`: flattened index -> (base, order)."""
    return divmod(index, m + 1)


def jet_name(base: str, j: int) -> str:
    if j <= 3:
        return base + "'" * j
    return f"{base}^({j})"


def jet_variable_names(names: Sequence[str], m: int) -> list[str]:
    return [jet_name(b, j) for b in names for j in range(m + 1)]


def lift_to_jets(p: Polynomial, m: int) -> Polynomial:
    """View a polynomial in the base variables as one in the order-0 jet variables."""
    n = p.nvars
    return p.embed(n * (m + 1), [jet_index(i, 0, m) for i in range(n)])


def derive_once(p: Polynomial, m: int) -> Polynomial:
    """Apply the derivation D with D(X_i^{(j)}) = X_i^{(j+1)} and X_i^{(m+1)} = 0."""
    out: dict[Exponent, Fraction] = {}
    for exp, c in p.coeffs.items():
        for k, e in enumerate(exp):
            if not e or k % (m + 1) == m:
                continue
            new = list(exp)
            new[k] -= 1
            new[k + 1] += 1
            key = tuple(new)
            out[key] = out.get(key, 0) + c * e
    return Polynomial(p.nvars, out)


def _series_mul(a: list[Polynomial], b: list[Polynomial], m: int) -> list[Polynomial]:
    N = a[0].nvars
    out = [Polynomial(N) for _ in range(m + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(m + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + ai * b[j]
    return out


def arc_coefficients(f: Polynomial, m: int) -> list[Polynomial]:
    """Coefficients of t^0..t^m in f(sum_j X^{(j)} t^j)."""
    n = f.nvars
    N = n * (m + 1)
    gamma = [[Polynomial.variable(N, jet_index(i, j, m)) for j in range(m + 1)] for i in range(n)]
    powers: dict[tuple[int, int], list[Polynomial]] = {}

    def power(i: int, k: int) -> list[Polynomial]:
        if (i, k) not in powers:
            if k == 1:
                powers[(i, k)] = gamma[i]
            else:
                powers[(i, k)] = _series_mul(power(i, k - 1), gamma[i], m)
        return powers[(i, k)]

    total = [Polynomial(N) for _ in range(m + 1)]
    for exp, c in f.coeffs.items():
        series = [Polynomial.constant(N, c)] + [Polynomial(N)] * m
        for i, k in enumerate(exp):
            if k:
                series = _series_mul(series, power(i, k), m)
        total = [s + t for s, t in zip(total, series)]
    return total


@dataclass(frozen=True)
class JetSystem:
    source: Ideal
    level: int
    convention: Convention
    generators: tuple[Polynomial, ...]

    @property
    def nvars(self) -> int:
        return self.source.ambient_dim * (self.level + 1)

    @property
    def variables(self) -> list[str]:
        return jet_variable_names(self.source.variables, self.level)

    def generator(self, alpha: int, j: int) -> Polynomial:
        return self.generators[alpha * (self.level + 1) + j]

    def render_lines(self) -> list[str]:
        names = self.variables
        return [g.render(names) for g in self.generators]

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.source.ambient_dim,
            "level": self.level,
            "convention": self.convention.value,
            "variables": self.variables,
            "generators": self.render_lines(),
        }


def build_jet_system(ideal: Ideal, m: int, convention: Convention = Convention.DERIVATION) -> JetSystem:
    if m < 0:
        raise ValueError("jet level must be >= 0")
    convention = Convention(convention)
    gens: list[Polynomial] = []
    for f in ideal.generators:
        if convention is Convention.DERIVATION:
            g = lift_to_jets(f, m)
            for _ in range(m + 1):
                gens.append(g)
                g = derive_once(g, m)
        else:
            gens.extend(arc_coefficients(f, m))
    return JetSystem(ideal, m, convention, tuple(gens))


def product_ideal(first: Ideal, second: Ideal) -> Ideal:
    """Ideal of the product subscheme, generators in disjoint variable blocks."""
    n1, n2 = first.ambient_dim, second.ambient_dim
    names = list(first.variables)
    for v in second.variables:
        name = v
        while name in names:
            name += "_2"
        names.append(name)
    gens = [g.embed(n1 + n2, range(n1)) for g in first.generators]
    gens += [g.embed(n1 + n2, range(n1, n1 + n2)) for g in second.generators]
    return Ideal(tuple(names), tuple(gens))


def jet_of_product(first: Ideal, second: Ideal, m: int,
                   convention: Convention = Convention.DERIVATION) -> JetSystem:
    return build_jet_system(product_ideal(first, second), m, convention)


def split_product_system(system: JetSystem, first: Ideal) -> tuple[list[Polynomial], list[Polynomial]]:
    """Undo :func:`jet_of_product`: the jet generators of each factor, renamed back.

    Raises ValueError if a generator uses variables from the other block.
    """
    m = system.level
    cut = first.ambient_dim * (m + 1)
    k = len(first.generators) * (m + 1)
    head, tail = system.generators[:k], system.generators[k:]
    if any(v >= cut for g in head for v in g.variables_used()):
        raise ValueError("first-factor generator uses second-block variables")
    if any(v < cut for g in tail for v in g.variables_used()):
        raise ValueError("second-factor generator uses first-block variables")
    return ([_restrict(g, range(cut)) for g in head],
            [_restrict(g, range(cut, system.nvars)) for g in tail])


def _restrict(g: Polynomial, keep: range) -> Polynomial:
    keep = list(keep)
    return Polynomial(len(keep), {tuple(e[k] for k in keep): c for e, c in g.coeffs.items()})
