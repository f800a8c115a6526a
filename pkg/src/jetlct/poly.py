"""Exact multivariate polynomials over Q, ideals, and the ideal text parser."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class NotMonomial(ValueError):
    pass


class UnitIdeal(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial in ``nvars`` variables with Fraction coefficients.

    Terms are kept in a dict keyed by exponent tuples; zero coefficients are
    never stored. ``terms()`` lists them in descending graded-lex order.
    """

    __slots__ = ("nvars", "_coeffs", "_hash")

    def __init__(self, nvars: int, coeffs: Mapping[Exponent, Fraction | int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (coeffs or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._coeffs = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c: Fraction | int = 1) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Fraction | int = 1) -> Polynomial:
        return cls(len(exp), {tuple(exp): c})

    @property
    def coeffs(self) -> dict[Exponent, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> list[tuple[Fraction, Exponent]]:
        return [(self._coeffs[e], e) for e in sorted(self._coeffs, key=grlex_key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self.terms())

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._coeffs.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def min_degree(self) -> int | None:
        """Smallest total degree of a term, or None for the zero polynomial."""
        if not self._coeffs:
            return None
        return min(sum(e) for e in self._coeffs)

    def degree(self) -> int | None:
        if not self._coeffs:
            return None
        return max(sum(e) for e in self._coeffs)

    def variables_used(self) -> set[int]:
        return {i for e in self._coeffs for i, k in enumerate(e) if k}

    def _check(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.nvars, {e: c * other for e, c in self._coeffs.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._coeffs.items())))
        return self._hash

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        total = Fraction(0)
        for e, c in self._coeffs.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Re-express in ``nvars`` variables, old variable i going to positions[i]."""
        out = {}
        for e, c in self._coeffs.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                new[positions[i]] += k
            out[tuple(new)] = c
        return Polynomial(nvars, out)

    def render(self, names: Sequence[str]) -> str:
        return render_polynomial(self, names)

    def __repr__(self) -> str:
        return f"Polynomial({self.render(default_names(self.nvars))!r})"


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["xyz"[i] if n > 1 else "x" for i in range(n)]
    return [f"x{i + 1}" for i in range(n)]


def _render_monomial(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_polynomial(p: Polynomial, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    out = []
    # display: low degree first, lex-largest first within a degree
    shown = sorted(p.terms(), key=lambda t: (sum(t[1]), tuple(-k for k in t[1])))
    for idx, (c, e) in enumerate(shown):
        mono = _render_monomial(e, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


@dataclass(frozen=True)
class Ideal:
    variables: tuple[str, ...]
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        n = len(self.variables)
        for g in self.generators:
            if g.nvars != n:
                raise DimensionMismatch(f"generator in {g.nvars} variables, ideal has {n}")
            if g.is_zero():
                raise ValueError("zero generator")

    @property
    def ambient_dim(self) -> int:
        return len(self.variables)

    def render(self) -> str:
        return "; ".join(g.render(self.variables) for g in self.generators)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain of exponents)."""

    ambient_dim: int
    min_generators: tuple[Exponent, ...]

    def __post_init__(self):
        if not self.min_generators:
            raise ValueError("a monomial ideal needs at least one generator")
        for b in self.min_generators:
            if len(b) != self.ambient_dim or any(k < 0 for k in b):
                raise ValueError(f"bad exponent vector {b}")

    @classmethod
    def from_exponents(cls, n: int, exps: Iterable[Sequence[int]]) -> MonomialIdeal:
        return cls(n, minimalize(tuple(e) for e in exps))

    @property
    def is_unit(self) -> bool:
        return self.min_generators == ((0,) * self.ambient_dim,)

    def to_ideal(self, names: Sequence[str] | None = None) -> Ideal:
        names = tuple(names or default_names(self.ambient_dim))
        return Ideal(names, tuple(Polynomial.monomial(b) for b in self.min_generators))

    def contains_monomial(self, exp: Sequence[int]) -> bool:
        return any(divides(b, exp) for b in self.min_generators)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("monomial ideals in different ambient spaces")
        return MonomialIdeal.from_exponents(self.ambient_dim, self.min_generators + other.min_generators)

    def render(self, names: Sequence[str] | None = None) -> str:
        return self.to_ideal(names).render()


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(exps: Iterable[Exponent]) -> tuple[Exponent, ...]:
    """Divisibility-reduce a set of exponent vectors; result sorted by grlex."""
    uniq = sorted(set(exps), key=grlex_key)
    keep: list[Exponent] = []
    for e in uniq:
        if not any(divides(k, e) for k in keep):
            keep.append(e)
    return tuple(keep)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def as_monomial_ideal(ideal: Ideal) -> MonomialIdeal:
    exps = []
    for g in ideal.generators:
        if len(g) != 1:
            raise NotMonomial(f"generator {g.render(ideal.variables)!r} is not a monomial")
        (_, e), = g.terms()
        exps.append(e)
    return MonomialIdeal.from_exponents(ideal.ambient_dim, exps)


def multiplicity_at_origin(ideal: Ideal | MonomialIdeal) -> int:
    """Largest q with the ideal inside the q-th power of the maximal ideal at 0.

    Returns 0 when some generator does not vanish at the origin.
    """
    if isinstance(ideal, MonomialIdeal):
        return min(sum(b) for b in ideal.min_generators)
    return min(g.min_degree() for g in ideal.generators)


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)|(?P<sep>;)"
    r"|(?P<int>\d+)|(?P<var>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^])"
)


def _tokenize(text: str):
    line, col, pos = 1, 1, 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind == "nl":
            toks.append(("sep", val, line, col))
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                toks.append((kind, val, line, col))
            col += len(val)
        pos = m.end()
    toks.append(("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, declared: Sequence[str] | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.declared = list(declared) if declared is not None else None
        self.names: list[str] = list(declared) if declared is not None else []

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def var_index(self, tok) -> int:
        name = tok[1]
        if name not in self.names:
            if self.declared is not None:
                self.fail(f"unknown variable {name!r}", tok)
            self.names.append(name)
        return self.names.index(name)

    def parse(self):
        gens = []
        while True:
            while self.peek()[0] == "sep":
                self.take()
            if self.peek()[0] == "end":
                break
            start = self.peek()
            gens.append((self.sum(), start))
            if self.peek()[0] not in ("sep", "end"):
                self.fail(f"unexpected {self.peek()[1]!r}")
        if not gens:
            self.fail("no generators")
        return gens

    def sum(self):
        terms = []
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        return terms

    def term(self):
        coeff = Fraction(1)
        factors: list[tuple[int, int]] = []
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            coeff = Fraction(int(tok[1]))
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                den = self.take()
                if den[0] != "int" or int(den[1]) == 0:
                    self.fail("expected positive integer denominator", den)
                coeff /= int(den[1])
            if self.peek()[0] == "op" and self.peek()[1] == "*":
                self.take()
                if self.peek()[0] != "var":
                    self.fail("expected variable after '*'")
            if self.peek()[0] != "var":
                return coeff, factors
        elif tok[0] != "var":
            self.fail("expected a coefficient or variable")
        factors.append(self.factor())
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                if self.peek()[0] != "var":
                    self.fail("expected variable after '*'")
                factors.append(self.factor())
            elif tok[0] == "var":
                factors.append(self.factor())
            else:
                return coeff, factors

    def factor(self):
        tok = self.take()
        idx = self.var_index(tok)
        power = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            ptok = self.take()
            if ptok[0] != "int" or int(ptok[1]) == 0:
                self.fail("expected positive integer exponent", ptok)
            power = int(ptok[1])
        return idx, power


def parse_ideal(text: str, declared_vars: Sequence[str] | None = None) -> Ideal:
    """Parse generators separated by newlines or ';' into an Ideal.

    >>> parse_ideal("x^2; y^3").render()
    'x^2; y^3'
    """
    parser = _Parser(text, declared_vars)
    raw = parser.parse()
    n = len(parser.names)
    if n == 0:
        raise ParseError("ideal has no variables", 1, 1)
    gens = []
    for terms, start in raw:
        coeffs: dict[Exponent, Fraction] = {}
        for sign, (c, factors) in terms:
            exp = [0] * n
            for idx, k in factors:
                exp[idx] += k
            key = tuple(exp)
            coeffs[key] = coeffs.get(key, 0) + sign * c
        g = Polynomial(n, coeffs)
        if g.is_zero():
            raise ParseError("generator is the zero polynomial", start[2], start[3])
        gens.append(g)
    return Ideal(tuple(parser.names), tuple(gens))
