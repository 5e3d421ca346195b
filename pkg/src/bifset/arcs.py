"""Milnor arcs at infinity as seen on a large circle C_R.

Arcs are the points of {h = 0} on C_R, in counterclockwise order starting
from angle 0.  Each carries its monotonicity (sign of <grad f, q>) and the
type of tangency between the fibre of f and the circle, decided twice: by
the Lie-derivative tower of J along the fibre and by the signs of J on the
two neighbouring bands.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import List, Optional, Sequence

from .errors import ClassifierDisagreement, DegenerateBand, TangentialIntersection
from .poly import BiPoly, differentiate, jacobian_det, milnor_poly
from .realroots import PlaneBox, Sign, solve_bivariate


class Monotonicity(enum.Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    SINGULAR = "Singular"

    def __str__(self):
        return self.value


class RhoType(enum.Enum):
    MAX = "Max"
    MIN = "Min"
    INFLECTIONAL = "Inflectional"

    def __str__(self):
        return self.value


@dataclass
class ArcSample:
    arc_index: int
    point: PlaneBox
    angle: float            # for display; ordering is decided exactly

    def approx(self):
        return self.point.approx()


@dataclass
class MilnorArc:
    sample: ArcSample
    monotonicity: Monotonicity
    rho_type: Optional[RhoType] = None
    tower_order: Optional[int] = None
    limit: object = None            # LimitValue, filled in by the Puiseux stage
    branch: object = None           # matched half-branch
    band_before: Optional[Sign] = None
    band_after: Optional[Sign] = None

    @property
    def index(self) -> int:
        return self.sample.arc_index


# -- angular order --------------------------------------------------------------------------

_X, _Y = BiPoly.x(), BiPoly.y()


def _half(p: PlaneBox) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2 pi)."""
    sy = p.sign(_Y)
    if sy > 0:
        return 0
    if sy < 0:
        return 1
    return 0 if p.sign(_X) > 0 else 1


def _cross_sign(p: PlaneBox, q: PlaneBox) -> int:
    """Sign of p.x q.y - p.y q.x for two points that are not collinear with the origin."""
    qr = q.exact_rational()
    if qr is not None:
        return int(p.sign(_X * qr[1] - _Y * qr[0]))
    if p.exact_rational() is not None:
        return -_cross_sign(q, p)
    prec = 64
    while True:
        px, py = p.enclosure(prec)
        qx, qy = q.enclosure(prec)
        s = (px * qy - py * qx).sign()
        if s is not None:
            return s
        prec *= 2
        if prec > 1 << 16:
            raise TangentialIntersection("two circle points could not be separated")


def angle_cmp(p: PlaneBox, q: PlaneBox) -> int:
    hp, hq = _half(p), _half(q)
    if hp != hq:
        return -1 if hp < hq else 1
    return -_cross_sign(p, q)


def _angle(p: PlaneBox) -> float:
    x, y = p.approx()
    a = math.atan2(y, x)
    return a if a >= 0 else a + 2 * math.pi


def circle_arc_points(h: BiPoly, R) -> List[ArcSample]:
    """Points of {h = 0} on C_R, counterclockwise from angle 0, indices from 1."""
    R = Fraction(R)
    circle = _X ** 2 + _Y ** 2 - R * R
    sols = solve_bivariate(h, circle)
    if sols.components:
        raise TangentialIntersection(f"C_{R} is contained in the Milnor curve")
    k = _X * differentiate(h, "y") - _Y * differentiate(h, "x")
    for p in sols.points:
        if p.sign(k) == Sign.ZERO:
            raise TangentialIntersection(f"the Milnor curve is tangent to C_{R} at {p}")
    pts = sorted(sols.points, key=cmp_to_key(angle_cmp))
    return [ArcSample(i + 1, p, _angle(p)) for i, p in enumerate(pts)]


# -- monotonicity ---------------------------------------------------------------------------

def radial_derivative(f: BiPoly) -> BiPoly:
    return _X * differentiate(f, "x") + _Y * differentiate(f, "y")


def arc_monotonicity(f: BiPoly, s: ArcSample) -> Monotonicity:
    sg = s.point.sign(radial_derivative(f))
    if sg > 0:
        return Monotonicity.INCREASING
    if sg < 0:
        return Monotonicity.DECREASING
    return Monotonicity.SINGULAR


# -- bands ----------------------------------------------------------------------------------

def _circle_point(R: Fraction, t: Fraction, flipped: bool):
    d = 1 + t * t
    x, y = R * (1 - t * t) / d, 2 * R * t / d
    return (-x, -y) if flipped else (x, y)


def _between(a: PlaneBox, q: PlaneBox, b: PlaneBox, wraps: bool) -> bool:
    """Is q strictly inside the counterclockwise arc from a to b?"""
    ca, cb = angle_cmp(a, q), angle_cmp(q, b)
    if not wraps:
        return ca < 0 and cb < 0
    return ca < 0 or cb < 0


def _half_tan(p: PlaneBox, R: Fraction, flipped: bool, prec: int) -> Fraction:
    xs, ys = p.enclosure(prec)
    if flipped:
        xs, ys = -xs, -ys
    v = ys / (xs + R)
    return Fraction(v.lo + v.hi, 2 << v.prec)


def _band_point(a: ArcSample, b: ArcSample, R: Fraction, wraps: bool, attempt: int):
    """A rational point of C_R strictly between two consecutive samples.

    The plain parameterization is singular at angle pi and the flipped one at
    angle 0; the gap decides which one is usable.
    """
    pa, pb = a.point, b.point
    lo, hi = a.angle, b.angle + (2 * math.pi if wraps else 0)
    eps = 1e-9
    has_pi = lo - eps <= math.pi <= hi + eps or lo - eps <= 3 * math.pi <= hi + eps
    has_zero = wraps or lo <= eps
    weight = Fraction(attempt + 1, attempt + 2)
    if has_pi and has_zero:
        # a gap wider than pi: aim at an angle well inside it
        mid = lo + (hi - lo) * float(weight)
        d_pi = abs(((mid - math.pi) + math.pi) % (2 * math.pi) - math.pi)
        flipped = d_pi > math.pi / 2
        theta = mid - math.pi if flipped else mid
        t = Fraction(math.tan(theta / 2)).limit_denominator(1 << 16)
        q = _circle_point(R, t, flipped)
        if _between(pa, PlaneBox.rational(*q), pb, wraps):
            return q
        raise DegenerateBand("could not place a probe in a wide band")
    flipped = has_pi
    prec = 64
    while prec <= 1 << 16:
        ta = _half_tan(pa, R, flipped, prec)
        tb = _half_tan(pb, R, flipped, prec)
        t = ta + (tb - ta) * weight
        for den in (1 << 8, 1 << 24, None):
            tt = t.limit_denominator(den) if den else t
            q = _circle_point(R, tt, flipped)
            if _between(pa, PlaneBox.rational(*q), pb, wraps):
                return q
        prec *= 2
    raise DegenerateBand("no rational point found between two samples")


def band_signs(J: BiPoly, samples: Sequence[ArcSample], R) -> List[Sign]:
    """Sign of J on each band: bands[i] lies between samples[i] and samples[i+1] (cyclically)."""
    R = Fraction(R)
    s = len(samples)
    out: List[Sign] = []
    for i in range(s):
        a, b = samples[i], samples[(i + 1) % s]
        wraps = i == s - 1
        for attempt in range(4):
            qx, qy = _band_point(a, b, R, wraps, attempt)
            v = J(qx, qy)
            if v != 0:
                out.append(Sign.POSITIVE if v > 0 else Sign.NEGATIVE)
                break
        else:
            raise DegenerateBand(f"J vanishes at every probe between arcs {a.arc_index} and {b.arc_index}")
    return out


# -- rho type -------------------------------------------------------------------------------

def tower_type(f: BiPoly, s: ArcSample, J: BiPoly | None = None, cap: int | None = None):
    """(type, m) from the first non-vanishing S_m = L_u^m(J) at the sample."""
    J = milnor_poly(f) if J is None else J
    cap = 2 * f.degree ** 2 if cap is None else cap
    S = J
    for m in range(1, cap + 1):
        S = jacobian_det(f, S)
        if S.is_zero():
            break
        sg = s.point.sign(S)
        if sg != 0:
            if m % 2 == 0:
                return RhoType.INFLECTIONAL, m
            return (RhoType.MAX if sg < 0 else RhoType.MIN), m
    raise ClassifierDisagreement(f"tangency order at arc {s.arc_index} exceeds the cap {cap}")


def band_type(before: Sign, after: Sign, mono: Monotonicity) -> RhoType:
    """Type implied by the band signs around an arc and its monotonicity."""
    if before == after:
        return RhoType.INFLECTIONAL
    # (+, -): f restricted to the circle has a local minimum at the arc
    circle_min = before > 0
    increasing = mono == Monotonicity.INCREASING
    return RhoType.MAX if circle_min == increasing else RhoType.MIN


def rho_type(f: BiPoly, s: ArcSample, bands: Sequence[Sign], mono: Monotonicity | None = None,
             J: BiPoly | None = None) -> RhoType:
    """Tangency type at an arc, cross-checked against the neighbouring band signs."""
    mono = arc_monotonicity(f, s) if mono is None else mono
    if mono == Monotonicity.SINGULAR:
        raise ValueError("rho type is undefined on a singular arc")
    n = len(bands)
    before, after = bands[(s.arc_index - 2) % n], bands[(s.arc_index - 1) % n]
    t, _ = tower_type(f, s, J)
    b = band_type(before, after, mono)
    if t != b:
        raise ClassifierDisagreement(
            f"arc {s.arc_index}: derivative tower says {t}, band signs say {b}")
    return t


def classify_arcs(f: BiPoly, samples: Sequence[ArcSample], R) -> List[MilnorArc]:
    J = milnor_poly(f)
    bands = band_signs(J, samples, R) if samples else []
    arcs = []
    n = len(samples)
    for s in samples:
        mono = arc_monotonicity(f, s)
        arc = MilnorArc(s, mono)
        arc.band_before = bands[(s.arc_index - 2) % n]
        arc.band_after = bands[(s.arc_index - 1) % n]
        if mono != Monotonicity.SINGULAR:
            t, m = tower_type(f, s, J)
            b = band_type(arc.band_before, arc.band_after, mono)
            if t != b:
                raise ClassifierDisagreement(
                    f"arc {s.arc_index}: derivative tower says {t}, band signs say {b}")
            arc.rho_type, arc.tower_order = t, m
        arcs.append(arc)
    return arcs


def alternation_violations(arcs: Sequence[MilnorArc]) -> List[tuple]:
    """Pairs of cyclically consecutive extremal arcs of one direction sharing a type.

    Inflectional arcs are skipped: band signs persist across them, so the
    circle-restricted extremum type alternates between successive extremal
    arcs, and for equal monotonicity so does the tangency type.  A singular
    arc (a curve of critical points crossing C_R) can flip the band sign, so
    pairs separated by one are not compared.
    """
    n = len(arcs)
    bad = []
    for i, a in enumerate(arcs):
        if a.rho_type not in (RhoType.MAX, RhoType.MIN):
            continue
        for k in range(1, n):
            b = arcs[(i + k) % n]
            if b.monotonicity == Monotonicity.SINGULAR:
                break
            if b.rho_type in (RhoType.MAX, RhoType.MIN):
                if a.monotonicity == b.monotonicity and a.rho_type == b.rho_type:
                    bad.append((a.index, b.index))
                break
    return bad


def band_consistency_violations(arcs: Sequence[MilnorArc]) -> List[int]:
    """Arcs where the band sign flips iff the arc is extremal fails."""
    bad = []
    for a in arcs:
        if a.rho_type is None:
            continue
        flips = a.band_before != a.band_after
        if flips != (a.rho_type != RhoType.INFLECTIONAL):
            bad.append(a.index)
    return bad
