"""Primitivity, the non-transversality set of the Milnor curve, radii and critical values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple

import sympy

from .errors import ConstantPolynomial, NotPrimitive, OverrideTooSmall, ZeroPolynomial
from .poly import (BiPoly, differentiate, factor_list, milnor_poly, poly_div_exact, poly_gcd,
                   squarefree_part)
from .realroots import (AlgebraicReal, PlaneBox, Sign, isolate_real_roots, solve_bivariate,
                        to_int_primitive)

Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PrimitivityInfo:
    primitive: bool
    center: Optional[Point] = None
    radial_profile: Optional[Tuple[Fraction, ...]] = None    # P, highest degree first
    translation: Point = (Fraction(0), Fraction(0))


@dataclass
class MuSet:
    isolated_points: List[PlaneBox]
    circle_radii_squared: List[AlgebraicReal]
    h: BiPoly
    companion: BiPoly
    origin_component: bool = False     # a factor x^2 + y^2 contributed the origin


@dataclass(frozen=True)
class MilnorRadius:
    R: Fraction
    certified_bound: Fraction
    overridden: bool = False


# -- primitivity --------------------------------------------------------------------------

def _solve_center(f: BiPoly) -> Optional[Point]:
    """Solve x f_y - y f_x = a1 f_y - a2 f_x coefficientwise for (a1, a2)."""
    fx, fy = differentiate(f, "x"), differentiate(f, "y")
    lhs = BiPoly.x() * fy - BiPoly.y() * fx
    monos = sorted(set(lhs.terms) | set(fx.terms) | set(fy.terms))
    # rows (p, q, r) meaning p*a1 + q*a2 = r
    rows = [(Fraction(fy.coeff(*m)), -Fraction(fx.coeff(*m)), Fraction(lhs.coeff(*m))) for m in monos]
    first = next((r for r in rows if r[0] or r[1]), None)
    if first is None:
        return None
    second = next((r for r in rows if first[0] * r[1] - first[1] * r[0] != 0), None)
    if second is None:
        # one independent equation; the center, if any, is its least-norm solution
        p, q, r = first
        n2 = p * p + q * q
        a = (p * r / n2, q * r / n2)
    else:
        p1, q1, r1 = first
        p2, q2, r2 = second
        det = p1 * q2 - q1 * p2
        a = ((r1 * q2 - q1 * r2) / det, (p1 * r2 - r1 * p2) / det)
    if any(p * a[0] + q * a[1] != r for p, q, r in rows):
        return None
    if not milnor_poly(f, a).is_zero():
        return None
    return a


def radial_profile(f: BiPoly, center: Point) -> Optional[Tuple[Fraction, ...]]:
    """P with f = P((x-a1)^2 + (y-a2)^2), or None."""
    g = f.translate(center[0], center[1])
    d = g.degree
    if d % 2:
        return None
    P = [Fraction(g.coeff(2 * k, 0)) for k in range(d // 2, -1, -1)]
    r = BiPoly.x() ** 2 + BiPoly.y() ** 2
    acc = BiPoly()
    for c in P:
        acc = acc * r + c
    return tuple(P) if acc == g else None


def nonprimitive_center(f: BiPoly) -> Optional[Point]:
    """The unique center a with f = P(rho_a), if there is one."""
    if f.is_constant():
        raise ConstantPolynomial("primitivity is undefined for constants")
    a = _solve_center(f)
    if a is None or radial_profile(f, a) is None:
        return None
    return a


def primitivity_info(f: BiPoly) -> PrimitivityInfo:
    a = nonprimitive_center(f)
    if a is None:
        return PrimitivityInfo(True)
    t = (a[0] + 1, a[1])
    return PrimitivityInfo(False, a, radial_profile(f, a), t)


def ensure_primitive(f: BiPoly) -> Tuple[BiPoly, Point]:
    """Translate so that the radial center (if any) sits at (-1, 0).

    Returns ``(g, t)`` with ``g(x, y) = f(x + t1, y + t2)``.
    """
    info = primitivity_info(f)
    if info.primitive:
        return f, (Fraction(0), Fraction(0))
    t = info.translation
    return f.translate(t[0], t[1]), t


# -- circles --------------------------------------------------------------------------------

def circle_components(g: BiPoly) -> List[Tuple[AlgebraicReal, BiPoly]]:
    """Real c > 0 with x^2 + y^2 - c dividing g.

    g is reduced modulo y^2 = c - x^2 with c symbolic; the remainder
    A(x, c) + y B(x, c) must vanish identically in x.  For irrational c the
    cofactor is taken with respect to M(x^2 + y^2), M the minimal polynomial
    of c, so it stays rational.
    """
    if g.is_zero():
        raise ZeroPolynomial("circle components of the zero polynomial")
    x, y, c = sympy.symbols("x y c")
    # substitute y^2 -> c - x^2 term by term
    A = 0
    B = 0
    for (i, j), coef in g.items():
        base = sympy.Rational(coef.numerator, coef.denominator) * x ** i * (c - x ** 2) ** (j // 2)
        if j % 2:
            B += base
        else:
            A += base
    conds = []
    for part in (A, B):
        p = sympy.Poly(sympy.expand(part), x)
        conds.extend(sympy.Poly(co, c) for co in p.all_coeffs() if co != 0)
    if not conds:
        raise AssertionError("g vanishes modulo every circle")
    G = conds[0]
    for q in conds[1:]:
        G = sympy.gcd(G, q)
    if G.degree() <= 0:
        return []
    coeffs = [Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in G.all_coeffs()]
    out = []
    done = set()
    for root in isolate_real_roots(to_int_primitive(coeffs)):
        if root.sign() <= 0:
            continue
        M = root.minpoly
        if M not in done:
            done.add(M)
            rr = BiPoly.x() ** 2 + BiPoly.y() ** 2
            Mp = BiPoly()
            for co in M:
                Mp = Mp * rr + co
            cof = poly_div_exact(g, Mp)
        out.append((root, cof))
    return out


# -- mu set -----------------------------------------------------------------------------------

def milnor_curve(f: BiPoly) -> BiPoly:
    """Reduced Milnor polynomial h (squarefree part of Jac(f, rho))."""
    J = milnor_poly(f)
    if J.is_zero():
        raise NotPrimitive("f is a polynomial in x^2 + y^2")
    return squarefree_part(J)


def companion(h: BiPoly) -> BiPoly:
    """x h_y - y h_x: vanishes where circles about the origin fail to be transverse to {h = 0}."""
    return BiPoly.x() * differentiate(h, "y") - BiPoly.y() * differentiate(h, "x")


def mu_set(f: BiPoly, h: BiPoly | None = None) -> MuSet:
    h = milnor_curve(f) if h is None else h
    k = companion(h)
    sols = solve_bivariate(h, k)
    radii: List[AlgebraicReal] = []
    origin = False
    for comp in sols.components:
        for fac, _ in factor_list(comp):
            for cval, _ in circle_components(fac):
                if cval not in radii:
                    radii.append(cval)
            # x^2 + y^2 (c = 0) contributes the origin only
            if fac == (BiPoly.x() ** 2 + BiPoly.y() ** 2).primitive():
                origin = True
    points = list(sols.points)
    if origin and not any(p.sign(BiPoly.x()) == Sign.ZERO and p.sign(BiPoly.y()) == Sign.ZERO
                          for p in points):
        points.append(PlaneBox.rational(0, 0, (h, k)))
    radii.sort()
    return MuSet(points, radii, h, k, origin)


# -- radius -----------------------------------------------------------------------------------

def _sqrt_upper(q: Fraction, bits: int = 40) -> Fraction:
    """A rational b >= sqrt(q), within 2**-bits."""
    if q <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = q.numerator * scale
    d = q.denominator
    r = isqrt(n // d)
    while Fraction(r * r, scale) < q:
        r += 1
    return Fraction(r, 1 << bits)


def _rho_upper(p: PlaneBox) -> Fraction:
    xs, ys = p.enclosure(48)
    v = xs.square() + ys.square()
    return v.hi_q


def critical_set(f: BiPoly):
    """Isolated critical points and one-dimensional singular components of f."""
    fx, fy = differentiate(f, "x"), differentiate(f, "y")
    if fx.is_zero() and fy.is_zero():
        raise ConstantPolynomial("f is constant")
    if fx.is_zero():
        return [], [q for q, _ in factor_list(fy)]
    if fy.is_zero():
        return [], [q for q, _ in factor_list(fx)]
    sols = solve_bivariate(fx, fy)
    comps = []
    for comp in sols.components:
        comps.extend(q for q, _ in factor_list(comp))
    return sols.points, comps


def milnor_radius(f: BiPoly, override=None, mu: MuSet | None = None,
                  critical_points: Sequence[PlaneBox] | None = None) -> MilnorRadius:
    """Smallest integer strictly above a certified bound on the norms of mu and critical points.

    Isolated critical points are included so that no Milnor arc outside the
    disk passes through one.  An override is checked exactly against the
    same sets.
    """
    mu = mu_set(f) if mu is None else mu
    if critical_points is None:
        critical_points, _ = critical_set(f)
    pts = list(mu.isolated_points) + list(critical_points)
    bound = Fraction(0)
    for p in pts:
        bound = max(bound, _sqrt_upper(_rho_upper(p)))
    for c in mu.circle_radii_squared:
        bound = max(bound, _sqrt_upper(c.refined(Fraction(1, 1 << 48)).hi))
    if override is not None:
        R = Fraction(override)
        if R <= 0:
            raise OverrideTooSmall("radius must be positive")
        R2 = R * R
        rho_minus = BiPoly.x() ** 2 + BiPoly.y() ** 2 - R2
        for p in pts:
            if p.sign(rho_minus) != Sign.NEGATIVE:
                raise OverrideTooSmall(f"radius {R} does not enclose the point {p}")
        for c in mu.circle_radii_squared:
            if not c < AlgebraicReal.from_rational(R2):
                raise OverrideTooSmall(f"radius {R} does not enclose a circle of radius^2 {c}")
        return MilnorRadius(R, bound, True)
    R = Fraction(int(bound) + 1)
    return MilnorRadius(R, bound, False)


# -- critical values --------------------------------------------------------------------------

def _component_points(G: BiPoly) -> List[PlaneBox]:
    """At least one point on every real connected component of {G = 0} (G irreducible)."""
    comp = companion(G)
    if comp.is_zero() or poly_gcd(G, comp).degree > 0:
        # G is radial: every component is a circle about the origin, meeting the x-axis
        other = BiPoly.y()
    else:
        other = comp
    sols = solve_bivariate(G, other)
    return list(sols.points)


def critical_values(f: BiPoly, critical=None) -> List[AlgebraicReal]:
    """Distinct values of f on its critical set, increasing."""
    points, comps = critical_set(f) if critical is None else critical
    vals: List[AlgebraicReal] = []
    for p in points:
        v = p.value(f)
        if v not in vals:
            vals.append(v)
    for G in comps:
        for p in _component_points(G):
            v = p.value(f)
            if v not in vals:
                vals.append(v)
    vals.sort()
    return vals
