import math

import pytest

from bifset.arcs import (ArcSample, Monotonicity, RhoType, alternation_violations, arc_monotonicity,
                         band_consistency_violations, band_signs, band_type, circle_arc_points,
                         classify_arcs, tower_type)
from bifset.cli import parse_input as P
from bifset.errors import ClassifierDisagreement
from bifset.milnor import milnor_curve
from bifset.oracle import to_float_evaluator, trace_arc
from bifset.poly import jacobian_det, milnor_poly
from bifset.realroots import Sign, solve_bivariate
from corpus import EX81, EX82, analysed

I, D, S = Monotonicity.INCREASING, Monotonicity.DECREASING, Monotonicity.SINGULAR
MAX, MIN, INFL = RhoType.MAX, RhoType.MIN, RhoType.INFLECTIONAL


def samples(text, R):
    f = P(text)
    return f, circle_arc_points(milnor_curve(f), R)


# -- arc samples ----------------------------------------------------------------------------------

def test_line_has_two_arcs_on_the_axis():
    _, s = samples("x", 1)
    assert [a.arc_index for a in s] == [1, 2]
    assert [a.point.exact_rational() for a in s] == [(1, 0), (-1, 0)]


def test_sample_counts_of_the_examples():
    assert len(samples(EX82, 3)[1]) == 10
    assert len(samples(EX81, 10)[1]) == 16


def test_samples_are_counterclockwise_from_angle_zero():
    _, s = samples("x - y^3", 3)
    angles = [a.angle for a in s]
    assert angles == sorted(angles)
    assert all(0 <= t < 2 * math.pi for t in angles)


def test_samples_lie_on_curve_and_circle():
    f, s = samples(EX82, 3)
    h = milnor_curve(f)
    for a in s:
        assert a.point.sign(h) == Sign.ZERO
        assert a.point.sign(P("x^2 + y^2 - 9")) == Sign.ZERO


# -- monotonicity ----------------------------------------------------------------------------------

def test_monotonicity_of_example_two():
    f, s = samples(EX82, 3)
    by = {a.arc_index: arc_monotonicity(f, a) for a in s}
    assert by[1] == by[2] == D
    assert by[6] == by[7] == I


def test_singular_arcs_where_milnor_curve_is_critical():
    f, s = samples("x^2", 1)
    assert [arc_monotonicity(f, a) for a in s] == [I, S, I, S]


# -- band signs -------------------------------------------------------------------------------------

def test_band_signs_of_a_line():
    f, s = samples("x", 1)
    assert band_signs(milnor_poly(f), s, 1) == [Sign.POSITIVE, Sign.NEGATIVE]


def test_band_signs_alternate_across_simple_arcs():
    f, s = samples(EX82, 3)
    b = band_signs(milnor_poly(f), s, 3)
    assert len(b) == len(s)
    assert all(u != v for u, v in zip(b, b[1:] + b[:1]))


def test_band_type_table():
    # anchored on f = x: arc 1 sits between bands (-, +) and arc 2 between (+, -), both minima
    assert band_type(Sign.NEGATIVE, Sign.POSITIVE, I) == MIN
    assert band_type(Sign.POSITIVE, Sign.NEGATIVE, D) == MIN
    assert band_type(Sign.POSITIVE, Sign.NEGATIVE, I) == MAX
    assert band_type(Sign.NEGATIVE, Sign.POSITIVE, D) == MAX
    assert band_type(Sign.POSITIVE, Sign.POSITIVE, I) == INFL


# -- rho type ------------------------------------------------------------------------------------------

def test_line_tangency_is_a_minimum():
    f, s = samples("x", 1)
    assert tower_type(f, s[0]) == (MIN, 1)
    # S_1 = Jac(f, J) = 2 at (1, 0)
    assert jacobian_det(f, milnor_poly(f)) == P("2")


def test_inflection_of_x_minus_y_cubed():
    f = P("x - y^3")
    J = milnor_poly(f)
    S1 = jacobian_det(f, J)
    pts = solve_bivariate(J, S1).points
    assert len(pts) == 2
    for p in pts:
        assert abs(abs(p.approx()[0]) - 1 / math.sqrt(3)) < 1e-9
        assert tower_type(f, ArcSample(0, p, 0.0), J) == (INFL, 2)


def test_tower_cap_is_reported():
    f, s = samples("x - y^3", 3)
    J = milnor_poly(f)
    S1 = jacobian_det(f, J)
    (p, _) = solve_bivariate(J, S1).points
    with pytest.raises(ClassifierDisagreement):
        tower_type(f, ArcSample(0, p, 0.0), J, cap=1)


def test_rho_types_of_example_one():
    r = analysed(EX81, 10)
    by = {a.index: a for a in r.arcs}
    assert [by[i].rho_type for i in (3, 7)] == [MAX, MAX]
    assert [by[i].rho_type for i in (10, 14)] == [MIN, MIN]


def test_classify_line():
    f, s = samples("x", 1)
    arcs = classify_arcs(f, s, 1)
    assert [(a.monotonicity, a.rho_type) for a in arcs] == [(I, MIN), (D, MIN)]


# -- invariants on the corpus --------------------------------------------------------------------------

def test_corpus_alternation_and_bands(corpus_reports):
    for name, _, _, r in corpus_reports:
        assert alternation_violations(r.arcs) == [], name
        assert band_consistency_violations(r.arcs) == [], name
        assert len(r.arcs) % 2 == 0, name


def test_arcs_are_monotone_when_traced_outward(corpus_reports):
    """f strictly monotone in the arc's direction and rho strictly increasing from R to 4R."""
    for name, _, _, r in corpus_reports:
        g = r.polynomial
        h = milnor_curve(g)
        ev = to_float_evaluator(g)
        R = float(r.radius.R)
        radii = [R * 4 ** (k / 12) for k in range(13)]
        for a in r.arcs:
            pts = trace_arc(h, a.sample.approx(), radii)
            norms = [math.hypot(x, y) for x, y in pts]
            assert all(u < v for u, v in zip(norms, norms[1:])), (name, a.index)
            vals = [float(ev(x, y)) for x, y in pts]
            steps = [v - u for u, v in zip(vals, vals[1:])]
            scale = 1e-9 * max(1.0, max(abs(v) for v in vals))
            if a.monotonicity == I:
                assert all(d > -scale for d in steps), (name, a.index)
            elif a.monotonicity == D:
                assert all(d < scale for d in steps), (name, a.index)
            else:
                assert all(abs(d) <= scale for d in steps), (name, a.index)
