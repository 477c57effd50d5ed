from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qptori.errors import DimensionMismatch
from qptori.laurent import (
    LaurentPoly,
    degree_component,
    monomials,
    poly_bracket,
    restrict_to_ray,
    support,
)
from qptori.lattice import Bicharacter

from conftest import exponents, forms, polys

STD = Bicharacter([[0, 1], [-1, 0]])
y1, y2 = LaurentPoly.var(2, 1), LaurentPoly.var(2, 2)


def test_bracket_examples():
    assert poly_bracket(y1, y2, STD) == y1 * y2
    f = y1 + y2
    assert poly_bracket(f, f, STD) == 0
    expected = LaurentPoly(2, {(2, 1): 1, (1, 2): -1})
    assert poly_bracket(y1 + y2, y1 * y2, STD) == expected
    assert support(expected) == {(2, 1), (1, 2)}


def test_support_examples():
    assert support(LaurentPoly.zero(2)) == set()
    assert support(y1 + 2 * y1 * y2) == {(1, 0), (1, 1)}


def test_restrict_to_ray_examples():
    f = monomials(2, [(1, 0), (1, 1), (1, 2)])
    assert restrict_to_ray(f, (1, 0), (0, 1)) == f
    assert restrict_to_ray(f, (1, 0), (1, 1)) == y1
    g = monomials(2, [(1, 0), (3, 1)])
    assert restrict_to_ray(g, (1, 0), (2, 1)) == g


def test_degree_component_examples():
    f = y1 + y2 ** 2
    assert degree_component(f, (1, 1), 2) == y2 ** 2
    assert degree_component(f, (2, 1), 2) == f
    assert degree_component(f, (1, 1), 7) == 0


def test_arithmetic_and_inverse_monomials():
    assert (y1 ** -2) * (y1 ** 2) == 1
    assert (y1 + y2) ** 2 == y1 ** 2 + 2 * y1 * y2 + y2 ** 2
    assert (y1 - y1) == LaurentPoly.zero(2)
    with pytest.raises(DimensionMismatch):
        y1 + LaurentPoly.var(3, 1)


def test_text_form():
    f = LaurentPoly(2, {(1, -2): Fraction(-3, 2), (0, 0): 1})
    assert str(f) == "1 * y^(0,0) + -3/2 * y^(1,-2)"
    assert LaurentPoly.parse(str(f)) == f
    assert str(LaurentPoly.zero(3)) == "0"
    assert LaurentPoly.parse("y^(1,0) + -y^(0,2) + 2") == y1 - y2 ** 2 + 2
    with pytest.raises(ValueError):
        LaurentPoly.parse("y1 + y2")


@given(st.integers(2, 3).flatmap(lambda m: st.tuples(forms(m), polys(m), polys(m), polys(m))))
def test_jacobi(args):
    omega, f, g, h = args

    def br(a, b):
        return poly_bracket(a, b, omega)

    assert br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g)) == 0


@given(st.integers(2, 3).flatmap(lambda m: st.tuples(forms(m), polys(m), polys(m), polys(m))))
def test_leibniz_and_skew(args):
    omega, f, g, h = args
    assert poly_bracket(f, g * h, omega) == poly_bracket(f, g, omega) * h + g * poly_bracket(f, h, omega)
    assert poly_bracket(f, g, omega) == -poly_bracket(g, f, omega)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(forms(m), exponents(m), exponents(m))))
def test_bracket_is_degree_zero(args):
    omega, a, b = args
    out = poly_bracket(LaurentPoly.monomial(a), LaurentPoly.monomial(b), omega)
    assert support(out) <= {tuple(x + y for x, y in zip(a, b))}


@given(st.integers(2, 3).flatmap(lambda m: st.tuples(polys(m, 8), exponents(m, 2), exponents(m, 2))))
def test_restrict_idempotent(args):
    f, base, ray = args
    if not any(ray):
        return
    once = restrict_to_ray(f, base, ray)
    assert restrict_to_ray(once, base, ray) == once
    assert all(once.coeff(e) == f.coeff(e) for e in once.support())


@given(st.integers(1, 4).flatmap(lambda m: polys(m, 6)))
def test_parse_round_trip(f):
    assert LaurentPoly.parse(str(f), f.dim) == f
