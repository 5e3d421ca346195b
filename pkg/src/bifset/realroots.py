"""Real root isolation, real algebraic numbers and certified signs.

Univariate polynomials are dense coefficient sequences, highest degree first.
Isolation uses sympy's exact continued-fraction/Descartes routines; an
independent Sturm-sequence count is available as a cross-check (switched on
with ``CROSS_CHECK``; the test suite enables it).

Points of zero-dimensional systems are carried exactly as homogeneous
coordinates ``(X : Y : W)`` whose entries are polynomials in a real algebraic
number ``beta`` reduced modulo its irreducible minimal polynomial.  Field
inverses are never formed: at the degrees that occur here they are far more
expensive than the sign and zero tests we actually need.
"""

from __future__ import annotations

import enum
from decimal import Decimal, localcontext
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import List, NamedTuple, Optional, Sequence, Tuple

import sympy
from gmpy2 import mpz
from sympy.polys import densearith as da
from sympy.polys import factortools as ft
from sympy.polys import rootisolation as ri
from sympy.polys import sqfreetools as sq
from sympy.polys.domains import QQ, ZZ

from ._interval import DI, horner
from .errors import BudgetExhausted, ShearExhausted, ZeroPolynomial
from .poly import BiPoly, poly_div_exact, poly_gcd

CROSS_CHECK = False
CROSS_CHECK_MAX_DEGREE = 30
DEFAULT_BUDGET_BITS = 1 << 15

UPoly = Tuple[int, ...]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __str__(self):
        return self.name.capitalize()


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q) -> bool:
        return self.lo <= q <= self.hi

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


# -- univariate helpers ----------------------------------------------------------

def _strip(p):
    i = 0
    while i < len(p) and not p[i]:
        i += 1
    return list(p[i:])


def to_int_primitive(coeffs) -> UPoly:
    """Clear denominators, remove content, make the leading coefficient positive."""
    cs = [Fraction(c) for c in _strip(coeffs)]
    if not cs:
        raise ZeroPolynomial("zero univariate polynomial")
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    if ints[0] < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _zz(p) -> list:
    return [ZZ(int(c)) for c in p]


def _qq(p) -> list:
    out = []
    for c in p:
        if isinstance(c, Fraction):
            out.append(QQ(c.numerator, c.denominator))
        else:
            out.append(QQ(c))
    return out


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    try:
        return Fraction(int(c.numerator), int(c.denominator))
    except AttributeError:
        return Fraction(int(c))


def sign_at_rational(p: Sequence, q) -> int:
    """Exact sign of ``p(q)`` for rational ``q``."""
    v = eval_rational(p, q)
    return (v > 0) - (v < 0)


def eval_rational(p: Sequence, q) -> Fraction:
    acc = Fraction(0)
    q = Fraction(q)
    for c in p:
        acc = acc * q + Fraction(c)
    return acc


def upoly_derivative(p: Sequence) -> list:
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def sqf_part(p: Sequence) -> UPoly:
    zp = _zz(to_int_primitive(p))
    return to_int_primitive([int(c) for c in sq.dup_sqf_part(zp, ZZ)])


def irreducible_factors(p: Sequence) -> List[UPoly]:
    """Distinct irreducible factors over Q (primitive, positive leading coefficient)."""
    zp = _zz(to_int_primitive(p))
    if len(zp) <= 1:
        return []
    _, facs = ft.dup_factor_list(zp, ZZ)
    out = [to_int_primitive([int(c) for c in f]) for f, _ in facs]
    return sorted(set(out), key=lambda f: (len(f), f))


# -- Sturm sequences (independent cross-check) --------------------------------------

def sturm_sequence(p: Sequence) -> List[List[Fraction]]:
    p0 = [Fraction(c) for c in _strip(p)]
    seq = [p0, [Fraction(c) for c in upoly_derivative(p0)]]
    while seq[-1]:
        r = _rem_frac(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _rem_frac(a, b):
    a = list(a)
    while len(a) >= len(b) and a:
        if a[0] == 0:
            a.pop(0)
            continue
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    return _strip(a)


def _variations(vals) -> int:
    signs = [v for v in vals if v != 0]
    return sum(1 for i in range(len(signs) - 1) if (signs[i] > 0) != (signs[i + 1] > 0))


def sturm_count(p: Sequence, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (``None`` means infinite)."""
    seq = sturm_sequence(p)

    def at(x):
        if x is None:
            return None
        return [eval_rational(s, x) for s in seq]

    if lo is None:
        v_lo = _variations([s[0] * (-1) ** (len(s) - 1) for s in seq])
    else:
        v_lo = _variations(at(lo))
    if hi is None:
        v_hi = _variations([s[0] for s in seq])
    else:
        v_hi = _variations(at(hi))
    return v_lo - v_hi


# -- isolation ---------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _isolators(m: UPoly) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Disjoint increasing isolating intervals of a squarefree integer polynomial."""
    if len(m) == 2:
        r = Fraction(-m[1], m[0])
        return ((r, r),)
    raw = ri.dup_isolate_real_roots_sqf(_zz(m), ZZ)
    out = []
    for a, b in raw:
        out.append((_frac(a), _frac(b)))
    return tuple(out)


def _eval_exact(p: Sequence[int], q: Fraction) -> Fraction:
    """``p(q)`` for an integer polynomial, computed in big integers."""
    a, b = mpz(q.numerator), mpz(q.denominator)
    acc = mpz(0)
    bp = mpz(1)
    n = len(p) - 1
    for i, c in enumerate(p):
        acc = acc * a + c * bp
        bp *= b
    return Fraction(int(acc), int(b) ** n)


def _qir_refine(p: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink an isolating interval of a simple root below ``width``.

    Quadratic interval refinement: a secant guess picks one cell of an
    ``N``-grid; two sign evaluations confirm it.  On success ``N`` is squared,
    on failure it falls back to bisection with a smaller grid.
    """
    fa, fb = _eval_exact(p, lo), _eval_exact(p, hi)
    if fa == 0:
        return lo, lo
    if fb == 0:
        return hi, hi
    if (fa > 0) == (fb > 0):
        raise AssertionError("interval does not bracket a sign change")
    sa = fa > 0
    N = 4
    while hi - lo > width:
        w = hi - lo
        done = False
        if N > 2:
            lam = (lo * fb - hi * fa) / (fb - fa)
            i = round((lam - lo) * N / w)
            i = min(max(i, 1), N - 1)
            gi = lo + w * i / N
            vi = _eval_exact(p, gi)
            if vi == 0:
                return gi, gi
            if (vi > 0) != sa:
                g0 = lo + w * (i - 1) / N
                v0 = _eval_exact(p, g0) if i > 1 else fa
                if v0 == 0:
                    return g0, g0
                if (v0 > 0) == sa:
                    lo, hi, fa, fb = g0, gi, v0, vi
                    done = True
            else:
                g1 = lo + w * (i + 1) / N
                v1 = _eval_exact(p, g1) if i + 1 < N else fb
                if v1 == 0:
                    return g1, g1
                if (v1 > 0) != sa:
                    lo, hi, fa, fb = gi, g1, vi, v1
                    done = True
        if done:
            N = min(N * N, 1 << 4096)
            continue
        N = max(2, isqrt(N))
        mid = (lo + hi) / 2
        vm = _eval_exact(p, mid)
        if vm == 0:
            return mid, mid
        if (vm > 0) == sa:
            lo, fa = mid, vm
        else:
            hi, fb = mid, vm
    return lo, hi


class AlgebraicReal:
    """A real root of an irreducible integer polynomial, identified by its rank.

    ``minpoly`` is irreducible over Q, primitive, with positive leading
    coefficient; ``index`` is the 0-based rank of the root among the real roots
    of ``minpoly``.  Two instances are equal exactly when both fields agree.
    """

    __slots__ = ("minpoly", "index", "lo", "hi", "_ref")

    def __init__(self, minpoly: Sequence[int], index: int):
        m = tuple(int(c) for c in minpoly)
        if m != to_int_primitive(m):
            raise ValueError("minimal polynomial must be primitive with positive leading coefficient")
        iso = _isolators(m)
        if not 0 <= index < len(iso):
            raise ValueError(f"root index {index} out of range for {m}")
        self.minpoly = m
        self.index = index
        self.lo, self.hi = iso[index]
        self._ref = (self.lo, self.hi)

    # constructors ----------------------------------------------------------------
    @classmethod
    def from_rational(cls, q) -> "AlgebraicReal":
        q = Fraction(q)
        return cls((q.denominator, -q.numerator), 0)

    @classmethod
    def roots_of(cls, p: Sequence) -> List["AlgebraicReal"]:
        return isolate_real_roots(p)

    # basic data ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def rational(self) -> Optional[Fraction]:
        if self.degree == 1:
            return Fraction(-self.minpoly[1], self.minpoly[0])
        return None

    @property
    def isolator(self) -> Interval:
        return Interval(self.lo, self.hi)

    def _refine_to(self, width: Fraction):
        lo, hi = self._ref
        if self.degree == 1 or hi - lo <= width:
            return lo, hi
        lo, hi = _qir_refine(self.minpoly, lo, hi, width)
        self._ref = (lo, hi)
        return lo, hi

    def refined(self, width) -> Interval:
        """An isolating interval of width at most ``width`` (the object is unchanged)."""
        lo, hi = self._refine_to(Fraction(width))
        return Interval(lo, hi)

    def enclosure(self, prec: int) -> DI:
        lo, hi = self._refine_to(Fraction(1, 1 << prec))
        return DI.between(lo, hi, prec + 8)

    def __float__(self):
        lo, hi = self._refine_to(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def decimal(self, digits: int = 12) -> Tuple[str, float]:
        """``digits`` significant decimal digits and a rigorous bound on their error."""
        q = self.rational
        lo, hi = (q, q) if q is not None else self._refine_to(Fraction(1, 10 ** (digits + 2)))
        while q is None and hi - lo > abs(lo + hi) / 2 / 10 ** (digits + 2):
            lo, hi = self._refine_to((hi - lo) / 1024)
        mid = (lo + hi) / 2
        with localcontext() as ctx:
            ctx.prec = digits
            d = Decimal(mid.numerator) / Decimal(mid.denominator)
        approx = Fraction(d)
        err = max(abs(approx - lo), abs(approx - hi))
        return str(d), float(err)

    # comparisons -------------------------------------------------------------------
    def _cmp(self, other) -> int:
        if not isinstance(other, AlgebraicReal):
            other = AlgebraicReal.from_rational(Fraction(other))
        if self.minpoly == other.minpoly:
            return (self.index > other.index) - (self.index < other.index)
        a, b = self.rational, other.rational
        if a is not None and b is not None:
            return (a > b) - (a < b)
        if a is not None:
            return -_cmp_rational_with(other, a)
        if b is not None:
            return _cmp_rational_with(self, b)
        width = Fraction(1, 1 << 16)
        while True:
            l1, h1 = self._refine_to(width)
            l2, h2 = other._refine_to(width)
            if h1 < l2:
                return -1
            if h2 < l1:
                return 1
            width /= 1 << 16

    def __eq__(self, other):
        if isinstance(other, AlgebraicReal):
            return self.minpoly == other.minpoly and self.index == other.index
        if isinstance(other, (int, Fraction)):
            return self.rational == Fraction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.minpoly, self.index))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def sign(self) -> Sign:
        return Sign(self._cmp(0))

    def __neg__(self):
        m = list(self.minpoly)
        n = len(m) - 1
        neg = to_int_primitive([c * (-1) ** (n - i) for i, c in enumerate(m)])
        count = len(_isolators(neg))
        return AlgebraicReal(neg, count - 1 - self.index)

    # evaluation ---------------------------------------------------------------------
    def sign_of(self, p: Sequence, budget_bits: int = DEFAULT_BUDGET_BITS) -> Sign:
        """Certified sign of the univariate polynomial ``p`` at this number."""
        p = _strip(p)
        if not p:
            return Sign.ZERO
        q = self.rational
        if q is not None:
            v = eval_rational(p, q)
            return Sign((v > 0) - (v < 0))
        rem = da.dup_rem(_qq(p), _qq(self.minpoly), QQ)
        if not rem:
            return Sign.ZERO
        return _interval_sign([_frac(c) for c in rem], self, budget_bits)

    def __repr__(self):
        q = self.rational
        if q is not None:
            return f"AlgebraicReal({q})"
        return f"AlgebraicReal(root {self.index} of {list(self.minpoly)} ~ {float(self):.12g})"


def _cmp_rational_with(alpha: AlgebraicReal, q: Fraction) -> int:
    """Compare irrational ``alpha`` with rational ``q`` exactly."""
    lo, hi = alpha._ref
    width = hi - lo
    while True:
        lo, hi = alpha._refine_to(width)
        if hi < q:
            return -1
        if lo > q:
            return 1
        width /= 1 << 8


def _interval_sign(poly: Sequence[Fraction], alpha: AlgebraicReal, budget_bits: int) -> Sign:
    prec = 64
    while prec <= budget_bits:
        v = horner(poly, alpha.enclosure(prec))
        s = v.sign()
        if s is not None:
            return Sign(s)
        prec *= 2
    raise BudgetExhausted(f"sign undecided at {budget_bits} bits")


def isolate_real_roots(p: Sequence) -> List[AlgebraicReal]:
    """All distinct real roots of ``p`` in increasing order."""
    cs = _strip(p)
    if not cs:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if len(cs) == 1:
        return []
    roots = []
    for fac in irreducible_factors(cs):
        roots.extend(AlgebraicReal(fac, i) for i in range(len(_isolators(fac))))
    roots.sort()
    if CROSS_CHECK and len(cs) - 1 <= CROSS_CHECK_MAX_DEGREE:
        expected = sturm_count(sqf_part(cs))
        if expected != len(roots):
            raise AssertionError(f"Sturm count {expected} != isolated {len(roots)}")
    return roots


def real_root_count(p: Sequence) -> int:
    cs = to_int_primitive(p)
    if len(cs) == 1:
        return 0
    return len(_isolators(sqf_part(cs)))


# -- algebraic numbers from field expressions -----------------------------------------

def algebraic_from_expression(m: UPoly, beta: AlgebraicReal, num: Sequence, den: Sequence = (1,)) -> AlgebraicReal:
    """The real number ``num(beta) / den(beta)`` as an AlgebraicReal.

    ``den(beta)`` must be nonzero.  The candidate minimal polynomial comes from
    the resultant ``res_t(m(t), v*den(t) - num(t))``; the right irreducible
    factor and root are selected by interval refinement, which terminates
    because all candidate roots are distinct.
    """
    num = [_frac(c) for c in _strip(num)] or [Fraction(0)]
    den = [_frac(c) for c in _strip(den)]
    if len(num) == 1 and len(den) == 1:
        return AlgebraicReal.from_rational(num[0] / den[0])
    t, v = sympy.symbols("t v")
    mt = sympy.Poly(list(m), t)
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in den], t).as_expr() * v \
        - sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in num], t).as_expr()
    res = sympy.resultant(mt.as_expr(), expr, t)
    rp = sympy.Poly(res, v)
    coeffs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in rp.all_coeffs()]
    candidates = []
    for fac in irreducible_factors(coeffs):
        candidates.extend(AlgebraicReal(fac, i) for i in range(len(_isolators(fac))))
    prec = 32
    while True:
        b = beta.enclosure(prec)
        d = horner(den, b)
        if d.contains_zero():
            prec *= 2
            continue
        val = horner(num, b) / d
        lo, hi = val.lo_q, val.hi_q
        hits = []
        w = (hi - lo) if hi > lo else Fraction(1, 1 << prec)
        for c in candidates:
            iv = c.refined(w)
            if not (iv.hi < lo or iv.lo > hi):
                hits.append(c)
        if len(hits) == 1:
            return hits[0]
        if not hits and prec > 4096:
            raise AssertionError("no candidate root matches the field value")
        prec *= 2


# -- bivariate systems ----------------------------------------------------------------

def _rem_q(p, m):
    """Exact remainder over Q (dup lists in QQ)."""
    return da.dup_rem(p, m, QQ)


def _to_zz_common(*polys):
    """Scale rational dups by one positive integer so that all become integral."""
    den = 1
    for p in polys:
        for c in p:
            d = int(_frac(c).denominator)
            den = den * d // gcd(den, d)
    return [[ZZ(int(_frac(c) * den)) for c in p] for p in polys]


def _kron_mul(a, b):
    """Integer polynomial product by packing into one big integer (Kronecker)."""
    if not a or not b:
        return []
    ba = max(abs(int(c)) for c in a).bit_length()
    bb = max(abs(int(c)) for c in b).bit_length()
    k = ba + bb + min(len(a), len(b)).bit_length() + 2
    A = mpz(0)
    for c in a:
        A = (A << k) + int(c)
    B = mpz(0)
    for c in b:
        B = (B << k) + int(c)
    C = A * B
    n = len(a) + len(b) - 1
    half, full, mask = mpz(1) << (k - 1), mpz(1) << k, (mpz(1) << k) - 1
    out = []
    for _ in range(n):
        c = C & mask
        if c >= half:
            c -= full
        out.append(ZZ(c))
        C = (C - c) >> k
    out.reverse()
    return da.dup_strip(out)


class _Scaled:
    """An element of Z[beta]/(m) stored as ``lc(m)**s * value``.

    Pseudo-remainders multiply by powers of the (positive) leading coefficient;
    tracking the exponent keeps sums exact without ever leaving the integers.
    """

    __slots__ = ("p", "s")

    def __init__(self, p, s=0):
        self.p, self.s = p, s


class PlaneBox:
    """An isolated real solution of a bivariate system, held exactly.

    The point is ``(X(beta)/W(beta), Y(beta)/W(beta))`` where ``beta`` is a real
    root of the irreducible ``minpoly`` and ``X, Y, W`` are integer
    polynomials of degree below that of ``minpoly``.  ``witness`` records the
    defining pair; ``x`` and ``y`` give certified enclosing intervals.
    """

    def __init__(self, minpoly: UPoly, beta: AlgebraicReal, X, Y, W, witness=None):
        self.minpoly = tuple(minpoly)
        self.beta = beta
        self._m = _zz(self.minpoly)
        self._lc = self._m[0]
        Xz, Yz, Wz = _to_zz_common(_qq(X), _qq(Y), _qq(W))
        rx, ry, rw = self._reduce(Xz), self._reduce(Yz), self._reduce(Wz)
        if not rw.p:
            raise ValueError("zero denominator in plane point")
        # bring the three coordinates to a common power of lc(m)
        top = max(rx.s, ry.s, rw.s)
        self.X = da.dup_mul_ground(rx.p, self._lc ** (top - rx.s), ZZ)
        self.Y = da.dup_mul_ground(ry.p, self._lc ** (top - ry.s), ZZ)
        self.W = da.dup_mul_ground(rw.p, self._lc ** (top - rw.s), ZZ)
        self.witness = witness
        self._wsign = None
        self._enc = {}
        self._cache = {}

    @classmethod
    def rational(cls, x, y, witness=None) -> "PlaneBox":
        x, y = Fraction(x), Fraction(y)
        return cls((1, 0), AlgebraicReal((1, 0), 0), [x], [y], [Fraction(1)], witness)

    def exact_rational(self):
        """``(x, y)`` as Fractions when the point is rational, else ``None``."""
        if self.beta.degree > 1:
            return None
        b = self.beta.rational
        w = eval_rational([int(c) for c in self.W], b)
        return (eval_rational([int(c) for c in self.X] or [0], b) / w,
                eval_rational([int(c) for c in self.Y] or [0], b) / w)

    # exact evaluation -------------------------------------------------------------
    def _reduce(self, p) -> _Scaled:
        p = da.dup_strip(p)
        n = len(self._m)
        if len(p) < n:
            return _Scaled(p, 0)
        k = len(p) - n + 1
        return _Scaled(da.dup_strip(da.dup_prem(p, self._m, ZZ)), k)

    def _mul(self, a: _Scaled, b: _Scaled) -> _Scaled:
        r = self._reduce(_kron_mul(a.p, b.p))
        return _Scaled(r.p, a.s + b.s + r.s)

    def _add(self, a: _Scaled, b: _Scaled) -> _Scaled:
        if a.s < b.s:
            a, b = b, a
        bp = da.dup_mul_ground(b.p, self._lc ** (a.s - b.s), ZZ) if a.s != b.s else b.p
        return _Scaled(da.dup_add(a.p, bp, ZZ), a.s)

    def _power(self, cache, name, k) -> _Scaled:
        key = (name, k)
        if key not in cache:
            base = {"x": self.X, "y": self.Y, "w": self.W}[name]
            if k == 0:
                cache[key] = _Scaled([ZZ(1)], 0)
            elif k == 1:
                cache[key] = _Scaled(base, 0)
            else:
                half = self._power(cache, name, k // 2)
                sqv = self._mul(half, half)
                cache[key] = sqv if k % 2 == 0 else self._mul(sqv, _Scaled(base, 0))
        return cache[key]

    def _hom_eval(self, p: BiPoly):
        """Return ``(v, e, den)`` with ``v = lc**v.s * den * p(X/W, Y/W) * W**e``."""
        e = p.degree
        den = 1
        for _, c in p.items():
            d = Fraction(c).denominator
            den = den * d // gcd(den, d)
        cache = self._cache
        acc = None
        for (i, j), c in sorted(p.items()):
            t = self._power(cache, "x", i)
            if j:
                t = self._mul(t, self._power(cache, "y", j))
            if e - i - j:
                t = self._mul(t, self._power(cache, "w", e - i - j))
            t = _Scaled(da.dup_mul_ground(t.p, ZZ(int(Fraction(c) * den)), ZZ), t.s)
            acc = t if acc is None else self._add(acc, t)
        return _Scaled(da.dup_strip(acc.p), acc.s), e, den

    def _w_sign(self) -> int:
        if self._wsign is None:
            self._wsign = int(self.beta.sign_of([int(c) for c in self.W]))
        return self._wsign

    def sign(self, p: BiPoly, budget_bits: int = DEFAULT_BUDGET_BITS) -> Sign:
        """Certified sign of ``p`` at the point.  Zero only through an exact test."""
        if p.is_zero():
            return Sign.ZERO
        # cheap path: an interval that excludes zero certifies the sign
        for prec in (64, 256):
            xs, ys = self.enclosure(prec)
            s = p(xs, ys).sign()
            if s is not None:
                return Sign(s)
        v, e, _ = self._hom_eval(p)
        val = v.p
        if not val:
            return Sign.ZERO
        if self.beta.degree > 1:
            s = int(_interval_sign([int(c) for c in val], self.beta, budget_bits))
        else:
            s = _rat_sign(val)
        if e % 2 and self._w_sign() < 0:
            s = -s
        return Sign(s)

    def value(self, p: BiPoly) -> AlgebraicReal:
        """``p`` at the point as an exact algebraic number."""
        if p.is_zero():
            return AlgebraicReal.from_rational(0)
        v, e, den = self._hom_eval(p)
        if not v.p:
            return AlgebraicReal.from_rational(0)
        d = self._power(self._cache, "w", e)
        lc = Fraction(int(self._lc))
        # p = (v / lc**v.s / den) / (d / lc**d.s)
        num = [Fraction(int(c)) for c in v.p]
        dco = [Fraction(int(c)) * den * lc ** (v.s - d.s) for c in d.p]
        if self.beta.degree == 1:
            b = self.beta.rational
            return AlgebraicReal.from_rational(eval_rational(num, b) / eval_rational(dco, b))
        return algebraic_from_expression(self.minpoly, self.beta, num, dco)

    # numerics -------------------------------------------------------------------
    def enclosure(self, prec: int = 64) -> Tuple[DI, DI]:
        """Intervals for x and y, each of width at most ``2**-prec``."""
        if prec in self._enc:
            return self._enc[prec]
        target = Fraction(1, 1 << (prec + 1))
        bp = prec + 16
        while True:
            b = self.beta.enclosure(bp)
            w = horner([int(c) for c in self.W], b)
            if not w.contains_zero():
                xs = horner([int(c) for c in self.X] or [0], b) / w
                ys = horner([int(c) for c in self.Y] or [0], b) / w
                if xs.width() <= target and ys.width() <= target:
                    # one precision per request, so enclosures of different points mix
                    xs, ys = xs.rescale(prec + 8), ys.rescale(prec + 8)
                    self._enc[prec] = (xs, ys)
                    return xs, ys
            bp *= 2

    @property
    def x(self) -> Interval:
        xs, _ = self.enclosure(64)
        return Interval(xs.lo_q, xs.hi_q)

    @property
    def y(self) -> Interval:
        _, ys = self.enclosure(64)
        return Interval(ys.lo_q, ys.hi_q)

    def approx(self) -> Tuple[float, float]:
        xs, ys = self.enclosure(53)
        return float(xs), float(ys)

    def __repr__(self):
        a, b = self.approx()
        return f"PlaneBox(~({a:.10g}, {b:.10g}))"


def _rat_sign(val) -> int:
    if len(val) != 1:
        raise AssertionError("rational field element of positive degree")
    v = int(val[0])
    return (v > 0) - (v < 0)


def certified_sign(p: BiPoly, box: PlaneBox, budget: int = DEFAULT_BUDGET_BITS) -> Sign:
    """Exact sign of ``p`` at the point carried by ``box``."""
    return box.sign(p, budget)


class Solutions(NamedTuple):
    points: List[PlaneBox]
    components: List[BiPoly]


def _shear_poly(g: BiPoly, k: int) -> sympy.Poly:
    """``g(u + k*y, y)`` as an integer polynomial in (y, u)."""
    u, y = sympy.symbols("u y")
    gi = g.primitive()
    expr = 0
    for (i, j), c in gi.items():
        expr += sympy.Integer(int(c)) * (u + k * y) ** i * y ** j
    return sympy.Poly(sympy.expand(expr), y, u, domain=ZZ)


def _coeff_lists(P: sympy.Poly) -> List[list]:
    """Coefficients in y (highest first), each a QQ dup in u."""
    rep = P.rep.to_list()
    return [[QQ(int(c)) for c in row] for row in rep]


def _reduce_coeffs(cs, m):
    out = [_rem_q(c, m) for c in cs]
    while out and not out[0]:
        out.pop(0)
    return out


def _prem_y(F, G, m):
    """Pseudo-remainder of F by G in y, coefficients reduced modulo m."""
    F = list(F)
    lg = G[0]
    while len(F) >= len(G):
        if not F[0]:
            F.pop(0)
            continue
        lf = F[0]
        newF = []
        for i in range(len(F)):
            a = _rem_q(da.dup_mul(lg, F[i], QQ), m)
            if i < len(G):
                a = da.dup_sub(a, _rem_q(da.dup_mul(lf, G[i], QQ), m), QQ)
            newF.append(a)
        F = newF[1:]
        while F and not F[0]:
            F.pop(0)
    return F


def fac_small(fac) -> bool:
    return len(fac) - 1 <= CROSS_CHECK_MAX_DEGREE // 2


def _is_perfect_power(G, m):
    """Check G == G_j * (y - y0)^j over Q[u]/m with y0 = -G_{j-1}/(j*G_j)."""
    j = len(G) - 1
    gj, gj1 = G[0], G[1]
    # (j*G_j)^j * G  vs  G_j * (j*G_j*y + G_{j-1})^j, compared coefficientwise
    lin = [_rem_q(da.dup_mul_ground(gj, QQ(j), QQ), m), gj1]
    pw = [[QQ(1)]]
    for _ in range(j):
        nxt = [[] for _ in range(len(pw) + 1)]
        for i, c in enumerate(pw):
            nxt[i] = da.dup_add(nxt[i], _rem_q(da.dup_mul(c, lin[0], QQ), m), QQ)
            nxt[i + 1] = da.dup_add(nxt[i + 1], _rem_q(da.dup_mul(c, lin[1], QQ), m), QQ)
        pw = nxt
    rhs = [_rem_q(da.dup_mul(gj, c, QQ), m) for c in pw]
    scale = [QQ(1)]
    for _ in range(j):
        scale = _rem_q(da.dup_mul(scale, lin[0], QQ), m)
    lhs = [_rem_q(da.dup_mul(scale, c, QQ), m) for c in G]
    return all(not da.dup_sub(a, b, QQ) for a, b in zip(lhs, rhs))


def _isolated_points(g1: BiPoly, g2: BiPoly, witness, max_shear: int) -> List[PlaneBox]:
    t1, t2 = g1.top_form(), g2.top_form()
    for k in range(max_shear):
        if t1(Fraction(k), Fraction(1)) == 0 or t2(Fraction(k), Fraction(1)) == 0:
            continue
        P1, P2 = _shear_poly(g1, k), _shear_poly(g2, k)
        prs = P1.subresultants(P2)
        res = prs[-1]
        if res.degree(0) != 0:
            raise AssertionError("subresultant chain did not end in a resultant")
        rcoeffs = [int(c) for c in sympy.Poly(res.as_expr(), sympy.Symbol("u")).all_coeffs()] \
            if res.as_expr().free_symbols else [int(res.as_expr())]
        if len(rcoeffs) == 1:
            return []
        chain = [_coeff_lists(A) for A in prs[:-1]]
        c1, c2 = _coeff_lists(P1), _coeff_lists(P2)
        points: List[PlaneBox] = []
        ok = True
        for fac in irreducible_factors(rcoeffs):
            nreal = len(_isolators(fac))
            if nreal == 0:
                continue
            m = _qq(fac)
            G = None
            for A in reversed(chain):
                red = _reduce_coeffs(A, m)
                if len(red) >= 2:
                    G = red
                    break
            if G is None:
                ok = False
                break
            # Every PRS element lies in the ideal (P1, P2), so each common root over
            # beta is a root of G; the constant leading coefficient in y guarantees
            # one exists.  Linear G (or a perfect power) thus pins down y exactly.
            if CROSS_CHECK and fac_small(fac):
                if _prem_y(_reduce_coeffs(c1, m), G, m) or _prem_y(_reduce_coeffs(c2, m), G, m):
                    raise AssertionError("PRS element does not divide the system")
            j = len(G) - 1
            if j > 1 and not _is_perfect_power(G, m):
                ok = False
                break
            N = da.dup_neg(G[1], QQ)
            D = da.dup_mul_ground(G[0], QQ(j), QQ)
            # x = u + k*y  ->  X = u*D + k*N
            X = da.dup_add(da.dup_mul(D, [QQ(1), QQ(0)], QQ), da.dup_mul_ground(N, QQ(k), QQ), QQ)
            for idx in range(nreal):
                beta = AlgebraicReal(fac, idx)
                points.append(PlaneBox(fac, beta, X, N, D, witness))
        if ok:
            return points
    raise ShearExhausted(f"no shear below {max_shear} separated the solutions")


def solve_bivariate(g1: BiPoly, g2: BiPoly, max_shear: int = 40) -> Solutions:
    """Common real zeros of ``g1`` and ``g2``.

    A nonconstant common factor is returned as a one-dimensional component;
    isolated points are the common zeros of the two cofactors.  Points lying
    on a component are reported too (they are isolated zeros of the cofactor
    system even if not of the original one).
    """
    if g1.is_zero() or g2.is_zero():
        raise ZeroPolynomial("solve_bivariate needs nonzero inputs")
    G = poly_gcd(g1, g2)
    components = []
    if G.degree > 0:
        components.append(G)
        g1 = poly_div_exact(g1, G)
        g2 = poly_div_exact(g2, G)
    if g1.degree <= 0 or g2.degree <= 0:
        return Solutions([], components)
    return Solutions(_isolated_points(g1, g2, (g1, g2), max_shear), components)
