import pytest

from bifset import analyze as exported_analyze
from bifset.cli import parse_input as P
from bifset.errors import ConstantPolynomial, MatchingUnresolved, ZeroPolynomial
from bifset.pipeline import _check_limit_side, analyze
from bifset.puiseux import LimitValue
from bifset.realroots import AlgebraicReal
from corpus import BROUGHTON, analysed


def test_package_exports_analyze():
    assert exported_analyze is analyze


def test_zero_and_constant_inputs():
    with pytest.raises(ZeroPolynomial):
        analyze(P("0"))
    with pytest.raises(ConstantPolynomial):
        analyze(P("7/2"))


def test_nonprimitive_input_is_translated():
    f = P("(x^2 + y^2)^2 - 2(x^2 + y^2)")
    r = analyze(f)
    assert not r.primitivity.primitive
    assert r.source == f
    assert r.polynomial == f.translate(1, 0)
    assert r.bifurcation_set == [AlgebraicReal.from_rational(-1), AlgebraicReal.from_rational(0)]


def test_report_shapes():
    r = analysed(BROUGHTON)
    assert len(r.bands) == len(r.arcs) == 6
    assert all(a.limit is not None and a.branch is not None for a in r.arcs)
    assert r.radius.R == 2


def test_limit_side_check_rejects_a_wrong_limit():
    r = analysed(BROUGHTON)
    a = next(a for a in r.arcs if a.limit.is_finite)
    good = a.limit
    try:
        # f increases to 0 along the arc; a limit far below the sample value is impossible
        a.limit = LimitValue.finite(AlgebraicReal.from_rational(-100))
        with pytest.raises(MatchingUnresolved):
            _check_limit_side(r.polynomial, a)
    finally:
        a.limit = good
    _check_limit_side(r.polynomial, a)


def test_radius_override_changes_nothing_but_radius():
    base = analysed(BROUGHTON)
    wide = analyze(P(BROUGHTON), 7)
    assert wide.radius.R == 7 and wide.radius.overridden
    assert [str(a.limit) for a in wide.arcs] == [str(a.limit) for a in base.arcs]
    assert wide.bifurcation_set == base.bifurcation_set
