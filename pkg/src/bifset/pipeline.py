"""End-to-end analysis of one polynomial."""

from __future__ import annotations

import logging

from .arcs import Monotonicity, circle_arc_points, classify_arcs
from .clusters import BifurcationReport, verdict
from .errors import ConstantPolynomial, MatchingUnresolved, ZeroPolynomial
from .milnor import critical_set, critical_values, ensure_primitive, milnor_radius, mu_set, \
    primitivity_info
from .poly import BiPoly
from .puiseux import all_branches, match_arcs

log = logging.getLogger(__name__)


def _side_of_limit(f: BiPoly, point, lam) -> int:
    """Sign of f(point) - lam, which is known to be nonzero."""
    q = lam.rational
    if q is not None:
        return int(point.sign(f - q))
    prec = 64
    while prec <= 1 << 16:
        xs, ys = point.enclosure(prec)
        s = (f(xs, ys) - lam.enclosure(prec)).sign()
        if s is not None:
            return s
        prec *= 2
    return 0


def _check_limit_side(f: BiPoly, arc) -> None:
    """Along an increasing arc f stays below a finite limit; along a decreasing one, above."""
    lim = arc.limit
    if not lim.is_finite or arc.monotonicity == Monotonicity.SINGULAR:
        return
    want = -1 if arc.monotonicity == Monotonicity.INCREASING else 1
    if _side_of_limit(f, arc.sample.point, lim.value) != want:
        raise MatchingUnresolved(
            f"arc {arc.index} is {arc.monotonicity} but f at its sample is not on the "
            f"expected side of the limit {lim}")


def analyze(f: BiPoly, radius_override=None, trunc_extra: int = 5) -> BifurcationReport:
    if f.is_zero():
        raise ZeroPolynomial("cannot analyse the zero polynomial")
    if f.is_constant():
        raise ConstantPolynomial("cannot analyse a constant polynomial")
    info = primitivity_info(f)
    g, _ = ensure_primitive(f)
    crit = critical_set(g)
    cvals = critical_values(g, crit)
    mu = mu_set(g)
    radius = milnor_radius(g, radius_override, mu, crit[0])
    R = radius.R
    log.info("radius %s (certified bound %.6g)", R, float(radius.certified_bound))
    samples = circle_arc_points(mu.h, R)
    arcs = classify_arcs(g, samples, R)
    pts, branches = all_branches(mu.h, g, trunc_extra)
    pairing = match_arcs(samples, branches, mu.h, R)
    for a in arcs:
        a.branch = pairing[a.index]
        a.limit = a.branch.limit
        _check_limit_side(g, a)
    bands = [(a.band_before, a.band_after) for a in arcs]
    return verdict(info, radius, arcs, cvals, infinity_points=pts, polynomial=g, bands=bands,
                   source=f)
