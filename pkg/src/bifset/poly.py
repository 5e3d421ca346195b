"""Exact sparse polynomials in two (and three homogeneous) variables.

Coefficients are :class:`fractions.Fraction` for everything that comes from
user input.  The containers are duck-typed, though: chart localization at an
irrational direction produces polynomials whose coefficients live in a
:class:`bifset.numberfield.NumberField`, and the same class carries them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, Iterable, Mapping, Tuple

import sympy

from .errors import PointNotAtInfinity, ZeroPolynomial

Rational = Fraction
Monomial = Tuple[int, int]

X, Y = "x", "y"
_SX, _SY = sympy.symbols("x y")


def _is_zero(c) -> bool:
    return not c


def _to_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class BiPoly:
    """Sparse bivariate polynomial ``sum c_ij x^i y^j``; zero terms are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: Dict[Monomial, object] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in monomial {(i, j)}")
                c = _to_coeff(c)
                if not _is_zero(c):
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_sympy(cls, expr) -> "BiPoly":
        poly = expr if isinstance(expr, sympy.Poly) else sympy.Poly(expr, _SX, _SY)
        if poly.gens != (_SX, _SY):
            poly = sympy.Poly(poly.as_expr(), _SX, _SY)
        terms = {}
        for (i, j), c in poly.terms():
            q = sympy.Rational(c)
            terms[(i, j)] = Fraction(int(q.p), int(q.q))
        return cls(terms)

    @classmethod
    def from_string(cls, text: str) -> "BiPoly":
        from .cli import parse_input

        return parse_input(text)

    # basic protocol ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, i: int, j: int):
        return self._terms.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == BiPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        k = 0 if var == X else 1
        return max((m[k] for m in self._terms), default=-1)

    def leading_monomial(self) -> Monomial:
        """Largest monomial in graded-lex order with x > y."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return max(self._terms, key=lambda m: (m[0] + m[1], m[0]))

    def leading_coeff(self):
        return self._terms[self.leading_monomial()]

    def top_form(self) -> "BiPoly":
        d = self.degree
        return BiPoly({m: c for m, c in self._terms.items() if m[0] + m[1] == d})

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            other = _to_coeff(other)
            if _is_zero(other):
                return BiPoly()
            return BiPoly({m: c * other for m, c in self._terms.items()})
        out: Dict[Monomial, object] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                m = (i1 + i2, j1 + j2)
                v = c1 * c2
                out[m] = out[m] + v if m in out else v
        return BiPoly(out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, scalar):
        return self * (1 / _to_coeff(scalar))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_coeffs(self, fn) -> "BiPoly":
        return BiPoly({m: fn(c) for m, c in self._terms.items()})

    # evaluation and substitution -------------------------------------------
    def __call__(self, xv, yv):
        """Evaluate at a point; works for any ring supporting + and *."""
        if not self._terms:
            return 0 * xv if not isinstance(xv, (int, Fraction)) else Fraction(0)
        dx = max(i for i, _ in self._terms)
        dy = max(j for _, j in self._terms)
        xp = _powers(xv, dx)
        yp = _powers(yv, dy)
        total = None
        for (i, j), c in self._terms.items():
            t = xp[i] * yp[j] * c
            total = t if total is None else total + t
        return total

    def compose(self, xs: "BiPoly", ys: "BiPoly") -> "BiPoly":
        """Substitute x -> xs, y -> ys (both polynomials)."""
        if not self._terms:
            return BiPoly()
        dx = max(i for i, _ in self._terms)
        dy = max(j for _, j in self._terms)
        xp = _powers(xs, dx, BiPoly.const(1))
        yp = _powers(ys, dy, BiPoly.const(1))
        out = BiPoly()
        cache = {}
        for (i, j), c in self._terms.items():
            key = (i, j)
            if key not in cache:
                cache[key] = xp[i] * yp[j]
            out = out + cache[key] * c
        return out

    def translate(self, a1, a2) -> "BiPoly":
        """Return p(x + a1, y + a2)."""
        return self.compose(BiPoly.x() + a1, BiPoly.y() + a2)

    def diff(self, var: str) -> "BiPoly":
        return differentiate(self, var)

    # normalization ----------------------------------------------------------
    def primitive(self) -> "BiPoly":
        """Integer coefficients with content 1 and positive grlex-leading coefficient."""
        if not self._terms:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        coeffs = [Fraction(c) for c in self._terms.values()]
        den = reduce(lcm, (c.denominator for c in coeffs), 1)
        nums = [int(c * den) for c in coeffs]
        g = reduce(gcd, (abs(n) for n in nums), 0)
        scale = Fraction(den, g)
        if self._terms[self.leading_monomial()] < 0:
            scale = -scale
        return self * scale

    def monic(self) -> "BiPoly":
        return self / self.leading_coeff()

    # conversions ------------------------------------------------------------
    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly.from_dict(
            {m: sympy.Rational(c.numerator, c.denominator) for m, c in self._terms.items()},
            _SX, _SY, domain="QQ",
        ) if self._terms else sympy.Poly(0, _SX, _SY, domain="QQ")

    def as_expr(self):
        return self.to_sympy().as_expr()

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        return format_poly(self)


def _powers(v, n, one=None):
    out = [one if one is not None else (v ** 0 if not isinstance(v, BiPoly) else BiPoly.const(1))]
    for _ in range(n):
        out.append(out[-1] * v)
    return out


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return f"({c})"


def format_poly(p: BiPoly, names=("x", "y")) -> str:
    """Render in the grammar accepted by :func:`bifset.cli.parse_input`."""
    if p.is_zero():
        return "0"
    parts = []
    for m in sorted(p._terms, key=lambda m: (m[0] + m[1], m[0]), reverse=True):
        c = p._terms[m]
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        mono = []
        for name, e in zip(names, m):
            if e == 1:
                mono.append(name)
            elif e > 1:
                mono.append(f"{name}^{e}")
        if not mono:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = "*".join(mono)
        else:
            body = _fmt_coeff(mag) + "*" + "*".join(mono)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


class TriPoly:
    """Homogeneous polynomial in (x, y, z); all monomials share one total degree."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping[Tuple[int, int, int], object], degree: int):
        clean = {}
        for m, c in terms.items():
            if sum(m) != degree:
                raise ValueError(f"monomial {m} is not of degree {degree}")
            c = _to_coeff(c)
            if not _is_zero(c):
                clean[tuple(m)] = c
        self.terms = clean
        self.degree = degree

    def __eq__(self, other):
        return isinstance(other, TriPoly) and self.degree == other.degree and self.terms == other.terms

    def __call__(self, xv, yv, zv):
        total = None
        for (i, j, k), c in self.terms.items():
            t = (xv ** i) * (yv ** j) * (zv ** k) * c
            total = t if total is None else total + t
        return total if total is not None else Fraction(0)

    def dehomogenize(self) -> BiPoly:
        """Set z = 1."""
        out: Dict[Monomial, object] = {}
        for (i, j, _), c in self.terms.items():
            out[(i, j)] = out.get((i, j), 0) + c
        return BiPoly(out)

    def __repr__(self):
        return f"TriPoly({self.terms}, degree={self.degree})"


# -- operations ---------------------------------------------------------------

def differentiate(p: BiPoly, var: str) -> BiPoly:
    """Exact partial derivative with respect to ``"x"`` or ``"y"``."""
    if var not in (X, Y):
        raise ValueError(f"unknown variable {var!r}")
    out = {}
    for (i, j), c in p.items():
        if var == X and i:
            out[(i - 1, j)] = c * i
        elif var == Y and j:
            out[(i, j - 1)] = c * j
    return BiPoly(out)


def jacobian_det(f: BiPoly, g: BiPoly) -> BiPoly:
    """Return ``f_x * g_y - f_y * g_x`` (row order: f first, g second)."""
    return differentiate(f, X) * differentiate(g, Y) - differentiate(f, Y) * differentiate(g, X)


def rho(center=(0, 0)) -> BiPoly:
    a1, a2 = (Fraction(c) for c in center)
    return (BiPoly.x() - a1) ** 2 + (BiPoly.y() - a2) ** 2


def milnor_poly(f: BiPoly, center=(0, 0)) -> BiPoly:
    """Jacobian determinant of (f, rho_center); vanishes identically iff f = P(rho_center)."""
    a1, a2 = (Fraction(c) for c in center)
    fx, fy = differentiate(f, X), differentiate(f, Y)
    return fx * (BiPoly.y() - a2) * 2 - fy * (BiPoly.x() - a1) * 2


def squarefree_part(g: BiPoly) -> BiPoly:
    """Product of the distinct irreducible factors, content-normalized."""
    if g.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if g.is_constant():
        return BiPoly.const(1)
    sp = g.to_sympy()
    gx = sp.diff(_SX)
    gy = sp.diff(_SY)
    common = sympy.gcd(sympy.gcd(sp, gx), gy)
    red = sympy.div(sp, common)[0] if not common.is_zero else sp
    return BiPoly.from_sympy(red).primitive()


def poly_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    if a.is_zero():
        return b.primitive() if not b.is_zero() else BiPoly()
    if b.is_zero():
        return a.primitive()
    g = BiPoly.from_sympy(sympy.gcd(a.to_sympy(), b.to_sympy()))
    return g.primitive()


def poly_div_exact(a: BiPoly, b: BiPoly) -> BiPoly:
    q, r = sympy.div(a.to_sympy(), b.to_sympy())
    if not r.is_zero:
        raise ArithmeticError("inexact polynomial division")
    return BiPoly.from_sympy(q)


def factor_list(p: BiPoly):
    """Irreducible factors over Q as ``[(factor, multiplicity)]`` (constant dropped)."""
    _, facs = sympy.factor_list(p.to_sympy())
    return [(BiPoly.from_sympy(q).primitive(), e) for q, e in facs]


def homogenize(p: BiPoly) -> TriPoly:
    """Multiply each term by z^(d - i - j), d the total degree of ``p``."""
    if p.is_zero():
        raise ZeroPolynomial("cannot homogenize the zero polynomial")
    d = p.degree
    return TriPoly({(i, j, d - i - j): c for (i, j), c in p.items()}, d)


def _binomial_row(n):
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def chart_localize(q: TriPoly, point) -> BiPoly:
    """Local equation at a point of the line at infinity.

    ``point`` is either an object with a ``slope`` attribute (``None`` for
    [1:0:0], otherwise ``a`` for [a:1:0], possibly a number-field element) or
    a projective triple.  For [a:1:0] the result is q(a + u, 1, z); for
    [1:0:0] it is q(1, u, z).  In both cases the germ variable ``u`` is the
    first coordinate of the returned polynomial and ``z`` the second.
    """
    if isinstance(point, tuple):
        X_, Y_, Z_ = point
        if Z_ != 0:
            raise PointNotAtInfinity(f"{point} is not on the line z = 0")
        if Y_ != 0:
            slope = Fraction(X_) / Fraction(Y_)
        elif X_ != 0:
            slope = None
        else:
            raise PointNotAtInfinity("[0:0:0] is not a projective point")
    else:
        slope = point.slope
    out: Dict[Monomial, object] = {}
    if slope is None:
        for (i, j, k), c in q.terms.items():
            m = (j, k)
            out[m] = out[m] + c if m in out else c
        return BiPoly(out)
    # (a + u)^i expanded binomially
    apow = [None]
    one = slope ** 0 if not isinstance(slope, Fraction) else Fraction(1)
    apow[0] = one
    maxi = max((i for i, _, _ in q.terms), default=0)
    for _ in range(maxi):
        apow.append(apow[-1] * slope)
    for (i, j, k), c in q.terms.items():
        row = _binomial_row(i)
        for e in range(i + 1):
            coef = c * apow[i - e] * row[e]
            if _is_zero(coef):
                continue
            m = (e, k)
            out[m] = out[m] + coef if m in out else coef
    return BiPoly(out)


def integer_coeffs(p: BiPoly) -> Dict[Monomial, int]:
    """Coefficients of the primitive integer multiple of ``p``."""
    return {m: int(c) for m, c in p.primitive().items()}


def random_poly(rng, degree: int, density: float = 0.7, coeff_range: int = 5) -> BiPoly:
    """Random integer polynomial of exact total degree ``degree`` (used by tests and demos)."""
    terms = {}
    for d in range(degree + 1):
        for i in range(d + 1):
            if rng.random() < density:
                terms[(i, d - i)] = rng.randint(-coeff_range, coeff_range)
    top = [(i, degree - i) for i in range(degree + 1)]
    if not any(terms.get(m) for m in top):
        terms[rng.choice(top)] = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
    return BiPoly(terms)


def monomials(p: BiPoly) -> Iterable[Monomial]:
    return p._terms.keys()
