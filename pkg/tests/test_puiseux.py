from fractions import Fraction

import pytest

from bifset.arcs import circle_arc_points
from bifset.cli import parse_input as P
from bifset.errors import CountMismatch, ZeroPolynomial
from bifset.milnor import milnor_curve
from bifset.pipeline import analyze
from bifset.puiseux import (InfinityPoint, LimitKind, all_branches, axis_rotation, branch_limit,
                            infinity_points, local_equation, match_arcs, puiseux_branches)
from bifset.realroots import AlgebraicReal, isolate_real_roots
from corpus import BROUGHTON, EX81, EX82, analysed

ZERO = AlgebraicReal.from_rational(0)
ORIGIN = InfinityPoint(ZERO)


def slopes(text):
    return [p.a for p in infinity_points(milnor_curve(P(text)))]


# -- points at infinity ------------------------------------------------------------------------

def test_infinity_points_of_example_two():
    assert slopes(EX82) == isolate_real_roots([3, 0, -2])[:1] + [ZERO] + isolate_real_roots([3, 0, -2])[1:] + [None]


def test_infinity_points_of_example_one():
    pts = slopes(EX81)
    assert None in pts and ZERO in pts
    assert set(a for a in pts if a is not None and a != ZERO) == set(isolate_real_roots([7, 0, -2]))
    assert len(pts) == 4


def test_infinity_points_of_line_and_broughton():
    assert slopes("x") == [None]
    assert slopes(BROUGHTON) == [isolate_real_roots([1, 0, -2])[0], ZERO, isolate_real_roots([1, 0, -2])[1]]


def test_projective_labels():
    assert ORIGIN.projective() == "[0:1:0]"
    assert InfinityPoint(None).projective() == "[1:0:0]"
    assert InfinityPoint(AlgebraicReal.from_rational(Fraction(-3, 2))).projective() == "[-3/2:1:0]"


# -- local branches ------------------------------------------------------------------------------

def test_cusp_has_two_real_halves_on_one_side():
    bs = puiseux_branches(P("x^2 - y^3"), ORIGIN, 6)
    assert [(b.side, b.n) for b in bs] == [(1, 2), (1, 2)]
    assert [[(j, c.rational) for j, c in b.coefficients] for b in bs] == [[(3, -1)], [(3, 1)]]
    assert [b.half for b in bs] == ["PlusZ", "PlusZ"]


def test_node_branches_along_the_axis():
    bs = puiseux_branches(P("x*y"), ORIGIN, 6)
    assert [(b.side, b.coefficients) for b in bs] == [(1, []), (-1, [])]


def test_broughton_germ():
    bs = puiseux_branches(P("2*(y^2 + 2x - x^3)"), ORIGIN, 6)
    assert [(b.side, b.n) for b in bs] == [(1, 1), (-1, 1)]
    for b in bs:
        assert b.coefficients[0] == (2, AlgebraicReal.from_rational(Fraction(-1, 2)))


def test_zero_germ_raises():
    with pytest.raises(ZeroPolynomial):
        puiseux_branches(P("0"), ORIGIN, 4)


def _residual(germ, b, T: Fraction):
    """|germ(u(T), side T^n)| in exact arithmetic, coefficients accurate to 2^-200."""
    coeffs = [c.to_algebraic().refined(Fraction(1, 1 << 200)).mid if c else 0 for c in b.series]
    u = sum(c * T ** j for j, c in enumerate(coeffs))
    return abs(germ(u, b.side * T ** b.n))


@pytest.mark.parametrize("germ", ["x^2 - y^3", "2*(y^2 + 2x - x^3)", "x^3 - y^5 + x*y^4", "(x - y^2)*(x + y) + y^5"])
def test_truncated_series_nearly_solve_the_germ(germ):
    g = P(germ)
    for b in puiseux_branches(g, ORIGIN, 10):
        # the residual shrinks much faster than T as T -> 0
        r1, r2 = _residual(g, b, Fraction(1, 100)), _residual(g, b, Fraction(1, 200))
        assert r2 <= r1 / 2 ** 8


# -- limits ---------------------------------------------------------------------------------------

def test_broughton_limits():
    f = P(BROUGHTON)
    _, bs = all_branches(milnor_curve(f), f)
    limits = {(b.at.projective(), b.side): b.limit for b in bs}
    assert limits[("[0:1:0]", 1)].value == ZERO
    assert limits[("[0:1:0]", -1)].value == ZERO
    assert {str(v) for k, v in limits.items() if k[0] != "[0:1:0]"} == {"+inf", "-inf"}


def test_branch_limit_needs_enough_terms():
    from bifset.errors import DepthInsufficient
    f = P(BROUGHTON)
    (b, _) = [b for b in puiseux_branches(local_equation(milnor_curve(f), ORIGIN, ORIGIN.field),
                                          ORIGIN, 2)][:2]
    with pytest.raises(DepthInsufficient):
        branch_limit(f, b)


def test_limits_of_example_two():
    r = analysed(EX82, 3)
    zero_arcs = sorted(a.index for a in r.arcs if a.limit.is_finite and a.limit.value == ZERO)
    assert zero_arcs == [1, 2, 6, 7]
    assert all(a.limit.kind != LimitKind.FINITE for a in r.arcs if a.index not in zero_arcs)


def test_truncation_depth_does_not_change_limits():
    for text, R in ((EX82, 3), (BROUGHTON, None), ("x^2*y^2 + x", None), ("(x*y - 1)^2 + x^2", None)):
        base = [str(a.limit) for a in analyze(P(text), R, trunc_extra=5).arcs]
        for extra in (0, 10):
            assert [str(a.limit) for a in analyze(P(text), R, trunc_extra=extra).arcs] == base


# -- matching --------------------------------------------------------------------------------------

def test_line_matching():
    f = P("x")
    h = milnor_curve(f)
    s = circle_arc_points(h, 1)
    _, bs = all_branches(h, f)
    m = match_arcs(s, bs, h, 1)
    assert m[1].at.is_horizontal and m[1].side == 1
    assert m[2].at.is_horizontal and m[2].side == -1
    assert axis_rotation(h, 1) == 0


def test_matching_count_mismatch():
    f = P(BROUGHTON)
    h = milnor_curve(f)
    s = circle_arc_points(h, 2)
    _, bs = all_branches(h, f)
    with pytest.raises(CountMismatch):
        match_arcs(s[:-1], bs, h, 2)


def test_matched_branches_head_the_right_way(corpus_reports):
    """Arc samples and their branches agree on the direction of escape."""
    for name, _, _, r in corpus_reports:
        for a in r.arcs:
            b = a.branch
            x, y = a.sample.approx()
            if b.at.is_horizontal:
                # z = 1/x, so the sign of x is the side
                assert (x > 0) == (b.side > 0) or abs(x) < abs(y), (name, a.index)
            else:
                # z = 1/y
                assert (y > 0) == (b.side > 0) or abs(y) < abs(x), (name, a.index)
