from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from bifset.cli import parse_input as P
from bifset.errors import PointNotAtInfinity, ZeroPolynomial
from bifset.poly import (BiPoly, TriPoly, chart_localize, differentiate, homogenize, jacobian_det,
                         milnor_poly, rho, squarefree_part)
from strategies import bipolys, small_fractions

X, Y = sympy.symbols("x y")


def sym(p: BiPoly):
    return sympy.expand(p.as_expr())


def from_sym(e):
    return BiPoly.from_sympy(sympy.expand(e))


# -- differentiation -----------------------------------------------------------------------

def test_differentiate_broughton():
    assert differentiate(P("x + x^2*y"), "x") == P("1 + 2x*y")
    assert differentiate(P("x + x^2*y"), "y") == P("x^2")


def test_differentiate_constant_is_zero():
    assert differentiate(P("7/3"), "x").is_zero()


def test_differentiate_matches_sympy():
    f = P("2x^2y^3 - 9xy^2 + 12y")
    assert sym(differentiate(f, "y")) == sympy.expand(sympy.diff(sym(f), Y))
    assert differentiate(f, "y") == P("6x^2y^2 - 18xy + 12")


def test_differentiate_rejects_unknown_variable():
    with pytest.raises(ValueError):
        differentiate(P("x"), "z")


@given(bipolys())
def test_differentiate_agrees_with_sympy(p):
    for v, s in (("x", X), ("y", Y)):
        assert sym(differentiate(p, v)) == sympy.expand(sympy.diff(sym(p), s))


# -- Jacobian and Milnor polynomial --------------------------------------------------------

def test_jacobian_of_coordinates():
    assert jacobian_det(P("x"), P("y")) == P("1")


def test_jacobian_with_rho_for_example_two():
    f = P("2x^2y^3 - 9xy^2 + 12y")
    expected = P("-2*(12x - 18x^2y + 6x^3y^2 + 9y^3 - 4xy^4)")
    assert jacobian_det(f, rho()) == expected
    assert milnor_poly(f) == expected


def test_milnor_poly_examples():
    assert milnor_poly(P("x + x^2*y")) == P("2y + 4x*y^2 - 2x^3")
    assert milnor_poly(P("x^2 + y^2")).is_zero()
    assert milnor_poly(P("x^3 + x*y^2 - 4x + 5")) == P("2y(x^2 + y^2 - 4)")


@given(bipolys(), bipolys())
def test_jacobian_is_antisymmetric(f, g):
    assert jacobian_det(f, g) == -jacobian_det(g, f)


@given(bipolys(), bipolys())
def test_jacobian_matches_sympy(f, g):
    F, G = sym(f), sym(g)
    want = sympy.expand(sympy.diff(F, X) * sympy.diff(G, Y) - sympy.diff(F, Y) * sympy.diff(G, X))
    assert sym(jacobian_det(f, g)) == want


@given(bipolys(), small_fractions, small_fractions)
def test_milnor_poly_center_shift(f, a1, a2):
    # M_a(f) = 2 f_x (y - a2) - 2 f_y (x - a1) = M(f) - 2 a2 f_x + 2 a1 f_y
    shifted = milnor_poly(f) - 2 * a2 * differentiate(f, "x") + 2 * a1 * differentiate(f, "y")
    assert milnor_poly(f, (a1, a2)) == shifted


def test_rho_at_center():
    assert rho((1, -2)) == P("(x - 1)^2 + (y + 2)^2")


# -- squarefree part -----------------------------------------------------------------------

def test_squarefree_examples():
    assert squarefree_part(P("x^2*y^3")) == P("x*y")
    assert squarefree_part(P("2y(x^2+y^2-4)")) == P("y(x^2+y^2-4)")
    assert squarefree_part(P("(x - y)^2 * (x + 1)^3")) == P("(x - y)(x + 1)")


def test_squarefree_of_zero_raises():
    with pytest.raises(ZeroPolynomial):
        squarefree_part(BiPoly())


@given(bipolys(nonconstant=True))
def test_squarefree_is_idempotent(p):
    s = squarefree_part(p)
    assert squarefree_part(s) == s


@given(bipolys(max_terms=3, nonconstant=True), bipolys(max_terms=3, nonconstant=True))
def test_squarefree_drops_repeated_factors(p, q):
    assert squarefree_part(p * p * q) == squarefree_part(p * q)


# -- projective charts ---------------------------------------------------------------------

def test_homogenize_broughton():
    q = homogenize(P("x + x^2*y"))
    assert q == TriPoly({(1, 0, 2): 1, (2, 1, 0): 1}, 3)


def test_chart_localize_examples():
    q = homogenize(P("x + x^2*y"))
    # q(u, 1, z) at [0:1:0], q(1, u, z) at [1:0:0]
    assert chart_localize(q, (0, 1, 0)) == P("x*y^2 + x^2")
    assert chart_localize(q, (1, 0, 0)) == P("y^2 + x")


def test_chart_localize_rejects_affine_points():
    q = homogenize(P("x"))
    with pytest.raises(PointNotAtInfinity):
        chart_localize(q, (0, 1, 1))
    with pytest.raises(PointNotAtInfinity):
        chart_localize(q, (0, 0, 0))


def test_chart_localize_at_rational_slope():
    q = homogenize(P("x^2 - 4y^2 + x"))
    # [2:1:0] lies on the curve at infinity: (2 + u)^2 - 4 + (2 + u) z
    assert chart_localize(q, (2, 1, 0)) == P("4x + x^2 + 2y + x*y")


@given(bipolys())
def test_homogenize_round_trip(p):
    assert homogenize(p).dehomogenize() == p


@given(bipolys(), small_fractions, small_fractions, st.integers(-3, 3).filter(lambda v: v != 0))
def test_homogenize_is_homogeneous(p, a, b, lam):
    q = homogenize(p)
    assert q(lam * a, lam * b, Fraction(lam)) == Fraction(lam) ** q.degree * q(a, b, Fraction(1))


# -- arithmetic ------------------------------------------------------------------------------

@given(bipolys(), bipolys(), small_fractions, small_fractions)
def test_ring_operations_match_sympy(p, q, a, b):
    assert sym(p * q - q + p) == sympy.expand(sym(p) * sym(q) - sym(q) + sym(p))
    assert (p * q)(a, b) == p(a, b) * q(a, b)


def test_from_sympy_round_trip():
    e = sympy.Rational(3, 7) * X ** 3 * Y - 2 * Y + 1
    assert sym(from_sym(e)) == sympy.expand(e)
