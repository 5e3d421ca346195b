from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from bifset.cli import parse_input as P
from bifset.errors import ConstantPolynomial, NotPrimitive, OverrideTooSmall
from bifset.milnor import (circle_components, critical_values, ensure_primitive, milnor_curve,
                           milnor_radius, mu_set, nonprimitive_center, primitivity_info)
from bifset.poly import BiPoly, milnor_poly, rho
from bifset.realroots import AlgebraicReal, Sign
from corpus import EX81, EX82


def q(v):
    return AlgebraicReal.from_rational(v)


# -- primitivity ---------------------------------------------------------------------------------

def test_center_of_shifted_radial_polynomial():
    assert nonprimitive_center(P("(x-1)^2 + (y+2)^2")) == (1, -2)
    assert nonprimitive_center(P("x^2 + y^2")) == (0, 0)


def test_primitive_polynomials_have_no_center():
    assert nonprimitive_center(P("x + x^2*y")) is None
    assert nonprimitive_center(P("x^2 + 2y^2")) is None
    assert nonprimitive_center(P("x")) is None


def test_center_of_constant_raises():
    with pytest.raises(ConstantPolynomial):
        nonprimitive_center(P("5"))


def test_ensure_primitive_moves_center_to_minus_one():
    f = P("(x^2 + y^2)^2")
    g, t = ensure_primitive(f)
    assert t == (1, 0)
    assert g == f.translate(1, 0)
    assert not milnor_poly(g).is_zero()
    assert nonprimitive_center(g) == (-1, 0)


def test_ensure_primitive_leaves_primitive_alone():
    f = P("x + x^2*y")
    assert ensure_primitive(f) == (f, (0, 0))


def test_primitivity_profile():
    info = primitivity_info(P("3((x-1)^2 + y^2)^2 - (x-1)^2 - y^2 + 7"))
    assert not info.primitive
    assert info.center == (1, 0)
    assert info.radial_profile == (3, -1, 7)


centers = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 4))
profiles = st.lists(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)), min_size=2, max_size=5) \
    .filter(lambda cs: cs[0] != 0)


@given(profiles, centers, centers)
def test_radial_round_trip(prof, a1, a2):
    r = rho((a1, a2))
    f = BiPoly()
    for c in prof:
        f = f * r + c
    info = primitivity_info(f)
    assert info.center == (a1, a2)
    assert info.radial_profile == tuple(prof)


# -- circles ---------------------------------------------------------------------------------

def test_circle_component_of_cubic():
    J = milnor_poly(P("x^3 + x*y^2 - 4x + 5"))
    ((c, cof),) = circle_components(J)
    assert c == q(4)
    assert cof.degree == 1 and set(cof.terms) == {(0, 1)}


def test_circle_with_irrational_radius():
    comps = circle_components(P("(x^2 + y^2 - 2)(x - y^3)"))
    assert [float(c) for c, _ in comps] == [pytest.approx(2)]
    assert comps[0][1] == P("x - y^3")


def test_no_circle_components():
    assert circle_components(milnor_poly(P(EX82))) == []
    assert circle_components(P("x^2 + y^2")) == []
    assert circle_components(P("x^2 + y^2 + 1")) == []


# -- mu set and radius -------------------------------------------------------------------------

def test_mu_of_a_line():
    mu = mu_set(P("x"))
    assert [p.exact_rational() for p in mu.isolated_points] == [(0, 0)]
    assert mu.circle_radii_squared == []


def test_mu_of_example_two_inside_disk_of_radius_three():
    mu = mu_set(P(EX82))
    assert mu.isolated_points
    for p in mu.isolated_points:
        assert p.sign(P("x^2 + y^2 - 9")) == Sign.NEGATIVE
        assert p.sign(mu.h) == Sign.ZERO and p.sign(mu.companion) == Sign.ZERO


def test_mu_of_example_one_inside_disk_of_radius_ten():
    for p in mu_set(P(EX81)).isolated_points:
        assert p.sign(P("x^2 + y^2 - 100")) == Sign.NEGATIVE


def test_mu_records_circle():
    mu = mu_set(P("x^3 + x*y^2 - 4x + 5"))
    assert mu.circle_radii_squared == [q(4)]


def test_milnor_curve_of_radial_raises():
    with pytest.raises(NotPrimitive):
        milnor_curve(P("x^2 + y^2"))


def test_radius_of_a_line():
    R = milnor_radius(P("x"))
    assert R.R == 1 and not R.overridden


def test_radius_encloses_circle():
    assert milnor_radius(P("x^3 + x*y^2 - 4x + 5")).R == 3


def test_radius_override_accepted():
    assert milnor_radius(P(EX82), 3).R == 3
    assert milnor_radius(P(EX81), 10).overridden


def test_radius_override_too_small():
    with pytest.raises(OverrideTooSmall):
        milnor_radius(P("x^3 + x*y^2 - 4x + 5"), 2)
    with pytest.raises(OverrideTooSmall):
        milnor_radius(P("x"), 0)
    with pytest.raises(OverrideTooSmall):
        # the critical point (1, 0) of (x-1)^2 + y^3 sits on the circle of radius 1
        milnor_radius(P("(x-1)^2 + y^3"), 1)


def test_radius_exceeds_certified_bound():
    r = milnor_radius(P(EX82))
    assert r.R > r.certified_bound
    assert r.R == int(r.certified_bound) + 1


# -- critical values ----------------------------------------------------------------------------

def test_broughton_has_no_critical_values():
    assert critical_values(P("x + x^2*y")) == []


def test_critical_values_examples():
    assert critical_values(P("x^2 + y^2")) == [q(0)]
    assert critical_values(P("(x^2 - 1)^2 + y^2")) == [q(0), q(1)]
    assert critical_values(P("x*y")) == [q(0)]


def test_critical_values_on_curve_of_critical_points():
    # the whole x-axis is critical for y^2
    assert critical_values(P("y^2 + 3")) == [q(3)]


def test_critical_values_irrational():
    # x^3 - 3x + y^2 has critical values -2 and 2; shift by sqrt-free amount keeps them rational
    assert critical_values(P("x^3 - 3x + y^2")) == [q(-2), q(2)]
    vals = critical_values(P("x^4 - 2x^2 + y^2 + x"))
    xs = [float(r) for r in sympy.Poly(sympy.Symbol("x") ** 3 * 4 - 4 * sympy.Symbol("x") + 1).real_roots()]
    want = sorted(t ** 4 - 2 * t ** 2 + t for t in xs)
    assert [float(v) for v in vals] == pytest.approx(want)
