from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jetlct.poly import (
    DimensionMismatch,
    MonomialIdeal,
    NotMonomial,
    ParseError,
    Polynomial,
    as_monomial_ideal,
    divides,
    minimalize,
    multiplicity_at_origin,
    parse_ideal,
    poly_add,
    poly_mul,
)


def P(text, names=("x", "y")):
    return parse_ideal(text, names).generators[0]


def test_parse_cusp():
    ideal = parse_ideal("u^2 - v^3")
    assert ideal.variables == ("u", "v")
    (g,) = ideal.generators
    assert g.coeffs == {(2, 0): 1, (0, 3): -1}


def test_parse_two_generators_and_separators():
    ideal = parse_ideal("x^2; y^3")
    assert [g.coeffs for g in ideal.generators] == [{(2, 0): 1}, {(0, 3): 1}]
    assert parse_ideal("x^2\n# comment\ny^3  # trailing\n") == ideal


def test_parse_rejects_zero_generator():
    with pytest.raises(ParseError, match="zero polynomial"):
        parse_ideal("x - x")


def test_parse_coefficients_and_implicit_products():
    (g,) = parse_ideal("3/4*x y^2 - 2x + 5").generators
    assert g.coeffs == {(1, 2): Fraction(3, 4), (1, 0): -2, (0, 0): 5}


def test_parse_declared_vars_order_and_unknown():
    ideal = parse_ideal("y + x", ["x", "y"])
    assert ideal.generators[0].coeffs == {(1, 0): 1, (0, 1): 1}
    with pytest.raises(ParseError, match="unknown variable 'z'") as err:
        parse_ideal("x + z", ["x", "y"])
    assert (err.value.line, err.value.column) == (1, 5)


@pytest.mark.parametrize("text, line, col", [
    ("x^", 1, 3),
    ("x + * y", 1, 5),
    ("x\ny $", 2, 3),
    ("x^0", 1, 3),
    ("1/0*x", 1, 3),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_ideal(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_add_examples():
    assert poly_add(P("x + y"), P("-x")) == P("y")
    p = P("x^2 - 3*y")
    assert poly_add(p, Polynomial(2)) == p
    assert poly_add(P("x"), P("x")) == P("2*x")


def test_mul_examples():
    assert poly_mul(P("u - v", ("u", "v")), P("u + v", ("u", "v"))) == P("u^2 - v^2", ("u", "v"))
    p = P("x^2 - 3*y")
    assert poly_mul(p, Polynomial.constant(2)) == p
    assert poly_mul(P("x"), P("x^2")) == P("x^3")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        poly_add(Polynomial.variable(2, 0), Polynomial.variable(3, 0))
    with pytest.raises(DimensionMismatch):
        poly_mul(Polynomial.variable(2, 0), Polynomial.variable(3, 0))


def test_terms_sorted_grlex_descending():
    p = P("1 + x + y^2 + x*y")
    exps = [e for _, e in p.terms()]
    assert exps == [(1, 1), (0, 2), (1, 0), (0, 0)]


def test_as_monomial_ideal_reduces_by_divisibility():
    mi = as_monomial_ideal(parse_ideal("x^2; x^2*y; y^3"))
    assert mi.min_generators == ((2, 0), (0, 3))
    assert as_monomial_ideal(parse_ideal("x^2; y^3")).min_generators == ((2, 0), (0, 3))
    with pytest.raises(NotMonomial):
        as_monomial_ideal(parse_ideal("u^2 - v^3"))


def test_as_monomial_ideal_unit_flag():
    ideal = parse_ideal("x; 3")
    mi = as_monomial_ideal(ideal)
    assert mi.is_unit and mi.min_generators == ((0,),)


def test_multiplicity_at_origin():
    assert multiplicity_at_origin(parse_ideal("x^2; y^3")) == 2
    assert multiplicity_at_origin(parse_ideal("x1; x2; x3; x4")) == 1
    assert multiplicity_at_origin(parse_ideal("x + 1")) == 0
    assert multiplicity_at_origin(MonomialIdeal.from_exponents(2, [(2, 1), (0, 4)])) == 3


# ---------------------------------------------------------------- properties

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, n=3):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * n), coeffs, max_size=5))
    return Polynomial(n, terms)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial(3)


@given(st.lists(polys(), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_render_parse_round_trip(gens):
    gens = [g for g in gens if not g.is_zero() and g.variables_used()] or [Polynomial.variable(3, 0)]
    names = ("x", "y", "z")
    from jetlct.poly import Ideal
    ideal = Ideal(names, tuple(gens))
    assert parse_ideal(ideal.render(), names) == ideal


exps = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=6)


@given(exps)
def test_minimalize_antichain_and_fixed_point(vs):
    mins = minimalize(vs)
    assert all(not divides(a, b) for a in mins for b in mins if a != b)
    assert minimalize(mins) == mins
    # every input is divisible by a kept generator
    assert all(any(divides(m, v) for m in mins) for v in vs)


@given(st.lists(polys(2), min_size=1, max_size=3))
def test_multiplicity_positive_iff_vanishing_at_origin(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    from jetlct.poly import Ideal
    ideal = Ideal(("x", "y"), tuple(gens))
    q = multiplicity_at_origin(ideal)
    assert (q >= 1) == all(g.evaluate((0, 0)) == 0 for g in gens)
