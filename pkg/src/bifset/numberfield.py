"""Real number fields Q(theta) and real roots of polynomials over them.

A field is fixed by an irreducible integer polynomial and one of its real
roots, given as an :class:`AlgebraicReal`; elements are rational polynomials
in the generator reduced modulo the minimal polynomial.  Q itself is the
field generated by the root 0 of ``t``.

Puiseux coefficients live in towers of such fields.  Instead of towers we
always move to a primitive element: adjoining a real root ``r`` of a
polynomial over ``K = Q(theta)`` yields ``L = Q(eta)`` with ``eta = r + s*theta``
(Trager's norm trick), together with the image of ``theta`` in ``L``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

import sympy
from gmpy2 import mpq

from ._interval import DI, horner
from .realroots import (AlgebraicReal, algebraic_from_expression, irreducible_factors,
                        isolate_real_roots, to_int_primitive, _isolators)


def _q(c) -> mpq:
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    return mpq(c)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _trim(cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return cs


class NumberField:
    """``Q(theta)`` with ``theta`` a fixed real root of ``minpoly``."""

    def __init__(self, minpoly: Sequence[int], root: AlgebraicReal):
        self.minpoly = tuple(int(c) for c in minpoly)        # highest degree first
        self.root = root
        self.degree = len(self.minpoly) - 1
        lc = self.minpoly[0]
        # monic modulus, lowest degree first, without the leading 1
        self._mod = [mpq(c, lc) for c in reversed(self.minpoly[1:])]
        self._gen = None

    @classmethod
    def rationals(cls) -> "NumberField":
        return _QQ

    @classmethod
    def of(cls, alpha: AlgebraicReal) -> "NumberField":
        """The field generated by ``alpha`` (Q when ``alpha`` is rational)."""
        if alpha.is_rational:
            return _QQ
        return cls(alpha.minpoly, alpha)

    @property
    def is_rational_field(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly \
            and self.root == other.root

    def __hash__(self):
        return hash((self.minpoly, self.root.index))

    def __repr__(self):
        if self.is_rational_field:
            return "QQ"
        return f"Q({self.root!r})"

    # element construction ------------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise ValueError("element of a different field")
            return value
        return FieldElement(self, [_q(value)])

    def from_coeffs(self, coeffs) -> "FieldElement":
        """Element ``sum coeffs[i] * theta**i`` (reduced)."""
        return FieldElement(self, self._reduce([_q(c) for c in coeffs]))

    def gen(self) -> "FieldElement":
        if self._gen is None:
            if self.is_rational_field:
                self._gen = FieldElement(self, [_q(Fraction(-self.minpoly[1], self.minpoly[0]))])
            else:
                self._gen = FieldElement(self, [mpq(0), mpq(1)])
        return self._gen

    def zero(self) -> "FieldElement":
        return FieldElement(self, [])

    def one(self) -> "FieldElement":
        return FieldElement(self, [mpq(1)])

    # internal arithmetic ------------------------------------------------------------
    def _reduce(self, cs):
        n = self.degree
        if self.is_rational_field:
            # theta is the rational root itself
            if len(cs) <= 1:
                return _trim(cs)
            r = self.gen().c[0] if self._gen is not None else mpq(-self.minpoly[1], self.minpoly[0])
            acc = mpq(0)
            for c in reversed(cs):
                acc = acc * r + c
            return _trim([acc])
        cs = list(cs)
        mod = self._mod
        for k in range(len(cs) - 1, n - 1, -1):
            top = cs[k]
            if top:
                base = k - n
                for i in range(n):
                    cs[base + i] -= top * mod[i]
            cs.pop()
        return _trim(cs)

    def _inverse(self, a):
        """Inverse modulo the minimal polynomial by the extended Euclidean algorithm."""
        m = [_q(c) for c in reversed(self.minpoly)]
        r0, r1 = m, list(a)
        s0, s1 = [], [mpq(1)]
        while len(_trim(r1)) > 1:
            r1 = _trim(r1)
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        r1 = _trim(r1)
        if not r1:
            raise ZeroDivisionError("inverse of zero in a number field")
        inv = r1[0]
        return self._reduce([c / inv for c in s1])

    # embeddings ------------------------------------------------------------------------
    def embed(self, elem: "FieldElement", image_of_gen: Optional["FieldElement"]) -> "FieldElement":
        """Map ``elem`` (of another field K) into this field, K's generator going to ``image_of_gen``."""
        if elem.field is self:
            return elem
        if not elem.c:
            return self.zero()
        if len(elem.c) == 1:
            return FieldElement(self, [elem.c[0]])
        if image_of_gen is None:
            raise ValueError("no embedding given for an irrational element")
        acc = self.zero()
        for c in reversed(elem.c):
            acc = acc * image_of_gen + FieldElement(self, [c])
        return acc


def _pmul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([mpq(c) for c in out])


def _pdivmod(a, b):
    a = list(a)
    b = _trim(b)
    if len(a) < len(b):
        return [], _trim(a)
    q = [mpq(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] / lb
        q[k] = coef
        if coef:
            for i, c in enumerate(b):
                a[k + i] -= coef * c
    return _trim(q), _trim(a[:len(b) - 1])


class FieldElement:
    """``sum c[i] * theta**i`` with rational ``c``; immutable."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.c = tuple(_trim(coeffs))
        self._hash = None

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                if other.field.is_rational_field:
                    return FieldElement(self.field, other.c)
                if self.field.is_rational_field:
                    return NotImplemented
                raise ValueError("mixing elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return FieldElement(self.field, [_q(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        a, b = self.c, o.c
        return FieldElement(self.field, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                         for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-c for c in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if len(o.c) == 1:
            k = o.c[0]
            return FieldElement(self.field, [c * k for c in self.c])
        if len(self.c) == 1:
            k = self.c[0]
            return FieldElement(self.field, [c * k for c in o.c])
        return FieldElement(self.field, self.field._reduce(_pmul(self.c, o.c)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        if len(self.c) == 1:
            return FieldElement(self.field, [1 / self.c[0]])
        return FieldElement(self.field, self.field._inverse(self.c))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, FieldElement) or other.field is not self.field \
            else other
        if o is NotImplemented or not isinstance(o, FieldElement):
            return False
        return self.c == o.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple((int(c.numerator), int(c.denominator)) for c in self.c))
        return self._hash

    # real embedding ------------------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def rational(self) -> Optional[Fraction]:
        if len(self.c) <= 1:
            return _frac(self.c[0]) if self.c else Fraction(0)
        return None

    def enclosure(self, prec: int) -> DI:
        if len(self.c) <= 1:
            return DI.point(self.rational(), prec)
        coeffs = [_frac(c) for c in reversed(self.c)]
        return horner(coeffs, self.field.root.enclosure(prec))

    def sign(self) -> int:
        if not self.c:
            return 0
        if len(self.c) == 1:
            return 1 if self.c[0] > 0 else -1
        prec = 64
        while True:
            s = self.enclosure(prec).sign()
            if s is not None:
                return s
            prec *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        if len(self.c) <= 1:
            return float(self.rational())
        return float(self.enclosure(64))

    def to_algebraic(self) -> AlgebraicReal:
        q = self.rational()
        if q is not None:
            return AlgebraicReal.from_rational(q)
        return algebraic_from_expression(self.field.minpoly, self.field.root,
                                         [_frac(c) for c in reversed(self.c)])

    def poly_coeffs(self) -> List[Fraction]:
        """Coefficients in the generator, lowest degree first."""
        return [_frac(c) for c in self.c]

    def __repr__(self):
        if len(self.c) <= 1:
            return str(self.rational())
        return f"<{float(self):.10g} in {self.field!r}>"


_QQ = NumberField((1, 0), AlgebraicReal((1, 0), 0))


# -- univariate polynomials over a field (lists, lowest degree first) ------------------

def ptrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def padd(a, b):
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pmul(a, b, K: NumberField):
    if not a or not b:
        return []
    out = [K.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pdivmod(a, b, K: NumberField):
    a = [K(c) if not isinstance(c, FieldElement) else c for c in a]
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], ptrim(a)
    inv = b[-1].inverse()
    q = [K.zero() for _ in range(len(a) - len(b) + 1)]
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] * inv
        q[k] = coef
        if coef:
            for i, c in enumerate(b):
                a[k + i] = a[k + i] - coef * c
    return ptrim(q), ptrim(a[:len(b) - 1])


def pmonic(p):
    inv = p[-1].inverse()
    return [c * inv for c in p]


def pgcd(a, b, K: NumberField):
    a, b = ptrim(a), ptrim(b)
    while b:
        _, r = pdivmod(a, b, K)
        a, b = b, r
    if not a:
        return []
    return pmonic(a)


def pderiv(p):
    return ptrim([p[i] * i for i in range(1, len(p))])


def peval(p, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else 0


def pmap(p, L: NumberField, image):
    return [L.embed(c, image) for c in p]


# -- real roots over a number field --------------------------------------------------------

class FieldRoot(NamedTuple):
    """A real root ``value`` (in ``field``) of a polynomial over K.

    ``image`` is the image of K's generator in ``field`` (``None`` when K is
    Q), so that other K-elements can be carried along.
    """
    field: NumberField
    value: FieldElement
    image: Optional[FieldElement]
    multiplicity: int


def _sym_elem(e: FieldElement, t):
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t ** i
               for i, c in enumerate(e.c))


def _norm(p, K: NumberField, s: int):
    """``Res_t(m(t), p_t(x - s t))`` as an integer polynomial, highest degree first."""
    t, x = sympy.symbols("t x")
    m = sum(int(c) * t ** i for i, c in enumerate(reversed(K.minpoly)))
    expr = sum(_sym_elem(c, t) * (x - s * t) ** k for k, c in enumerate(p))
    res = sympy.resultant(sympy.expand(m), sympy.expand(expr), t)
    poly = sympy.Poly(res, x)
    return to_int_primitive([Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
                             for c in poly.all_coeffs()])


def _is_squarefree(n) -> bool:
    from .realroots import sqf_part
    return len(sqf_part(n)) == len(n)


def _root_in_isolator(val: FieldElement, alpha: AlgebraicReal) -> bool:
    """Is ``val`` (known to be a real root of alpha's minimal polynomial) equal to alpha?"""
    lo, hi = alpha.lo, alpha.hi
    prec = 32
    while True:
        e = val.enclosure(prec)
        if e.lo_q > lo and e.hi_q < hi:
            return True
        if e.hi_q < lo or e.lo_q > hi:
            return False
        # isolator endpoints might be too loose; tighten alpha as well
        lo, hi = alpha._refine_to((hi - lo) / 4)
        prec *= 2


def _multiplicity(p, K, L, image, r) -> int:
    mult = 0
    q = pmap(p, L, image) if L is not K else list(p)
    while q and not peval(q, r):
        mult += 1
        q = pderiv(q)
    return mult


def real_roots(p: Sequence, K: NumberField) -> List[FieldRoot]:
    """All distinct real roots of ``p`` (K-coefficients, lowest degree first), increasing."""
    p = ptrim([K(c) if not isinstance(c, FieldElement) else c for c in p])
    if len(p) <= 1:
        return []
    sqf, _ = pdivmod(p, pgcd(p, pderiv(p), K), K)
    out: List[FieldRoot] = []
    if K.is_rational_field:
        ints = to_int_primitive([c.rational() for c in reversed(sqf)])
        for alpha in isolate_real_roots(ints):
            L = NumberField.of(alpha)
            r = L.gen() if not alpha.is_rational else L(alpha.rational)
            out.append(FieldRoot(L, r, None, _multiplicity(p, K, L, None, r)))
        return out
    if len(sqf) == 2:
        r = -sqf[0] / sqf[1]
        return [FieldRoot(K, r, K.gen(), _multiplicity(p, K, K, K.gen(), r))]
    s = 0
    while True:
        N = _norm(sqf, K, s)
        if _is_squarefree(N):
            break
        s = -s if s > 0 else -s + 1
    theta = K.gen()
    for Ni in irreducible_factors(N):
        # N_i(x + s*theta) over K
        shift = [theta * s, K.one()]
        Ai = []
        for c in Ni:
            Ai = padd(pmul(Ai, shift, K), [K(c)])
        Pi = pgcd(sqf, Ai, K)
        if len(Pi) <= 1:
            continue
        if len(Pi) == 2:
            r = -Pi[0]
            out.append(FieldRoot(K, r, theta, _multiplicity(p, K, K, theta, r)))
            continue
        if not _isolators(Ni):
            continue
        for eta_real in isolate_real_roots(Ni):
            L = NumberField(eta_real.minpoly, eta_real)
            eta = L.gen()
            mt = [L(Fraction(c)) for c in reversed(K.minpoly)]
            lin = [eta, L(-s)]                 # eta - s t
            pt = []
            powk = [L.one()]
            for c in sqf:
                cpoly = [L(_frac(q)) for q in c.c]         # coefficient as a polynomial in t
                pt = padd(pt, pmul(cpoly, powk, L))
                powk = pmul(powk, lin, L)
            g = pgcd(mt, pt, L)
            if len(g) != 2:
                raise AssertionError("norm was squarefree but the gcd is not linear")
            tau = -g[0]
            if not _root_in_isolator(tau, K.root):
                continue
            r = eta - tau * s
            out.append(FieldRoot(L, r, tau, _multiplicity(p, K, L, tau, r)))
    return sort_roots(out)


def compare_reals(a: FieldElement, b: FieldElement) -> int:
    """Compare elements of possibly different real fields; equal values must share a field."""
    if a.field is b.field or a.field == b.field:
        return (a - b).sign()
    prec = 32
    while True:
        ea, eb = a.enclosure(prec), b.enclosure(prec)
        if ea.hi_q < eb.lo_q:
            return -1
        if ea.lo_q > eb.hi_q:
            return 1
        if prec > 1 << 14:
            # equal values in different fields: fall back to exact algebraic comparison
            x, y = a.to_algebraic(), b.to_algebraic()
            return (x > y) - (x < y)
        prec *= 2


def sort_roots(roots: List[FieldRoot]) -> List[FieldRoot]:
    from functools import cmp_to_key
    return sorted(roots, key=cmp_to_key(lambda u, v: compare_reals(u.value, v.value)))
