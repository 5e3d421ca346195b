"""Outward-rounded interval arithmetic on fixed-point binary numbers.

A value ``[lo, hi] * 2**-prec`` with integer ``lo <= hi``.  Every operation
rounds ``lo`` down and ``hi`` up, so the true result is always enclosed.  No
global state: the precision travels with each interval.
"""

from __future__ import annotations

from fractions import Fraction


def _floor_div_pow2(n: int, k: int) -> int:
    return n >> k


def _ceil_div_pow2(n: int, k: int) -> int:
    return -((-n) >> k)


class DI:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: int, hi: int, prec: int):
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi, self.prec = lo, hi, prec

    @classmethod
    def point(cls, q, prec: int) -> "DI":
        """Tightest enclosure of a rational (or int) ``q``."""
        if isinstance(q, int):
            v = q << prec
            return cls(v, v, prec)
        q = Fraction(q)
        num = q.numerator << prec
        lo = num // q.denominator
        hi = -((-num) // q.denominator)
        return cls(lo, hi, prec)

    @classmethod
    def between(cls, a, b, prec: int) -> "DI":
        a, b = Fraction(a), Fraction(b)
        lo = (a.numerator << prec) // a.denominator
        hi = -((-(b.numerator << prec)) // b.denominator)
        return cls(lo, hi, prec)

    def _coerce(self, other) -> "DI":
        if isinstance(other, DI):
            if other.prec != self.prec:
                raise ValueError("precision mismatch")
            return other
        return DI.point(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        return DI(self.lo + o.lo, self.hi + o.hi, self.prec)

    __radd__ = __add__

    def __neg__(self):
        return DI(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        return DI(self.lo - o.hi, self.hi - o.lo, self.prec)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other >= 0:
                return DI(self.lo * other, self.hi * other, self.prec)
            return DI(self.hi * other, self.lo * other, self.prec)
        o = self._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        p = self.prec
        return DI(_floor_div_pow2(min(ps), p), _ceil_div_pow2(max(ps), p), p)

    __rmul__ = __mul__

    def square(self):
        lo, hi = self.lo, self.hi
        if lo >= 0:
            a, b = lo * lo, hi * hi
        elif hi <= 0:
            a, b = hi * hi, lo * lo
        else:
            a, b = 0, max(lo * lo, hi * hi)
        return DI(_floor_div_pow2(a, self.prec), _ceil_div_pow2(b, self.prec), self.prec)

    def __pow__(self, n: int):
        if n == 0:
            return DI.point(1, self.prec)
        if n % 2 == 0:
            return (self ** (n // 2)).square()
        return self * self ** (n - 1)

    def inverse(self) -> "DI":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        p = self.prec
        one = 1 << (2 * p)
        # 1/[lo,hi] = [1/hi, 1/lo]
        lo = one // self.hi
        hi = -((-one) // self.lo)
        return DI(lo, hi, p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def rescale(self, prec: int) -> "DI":
        """The same enclosure expressed at another precision (rounded outward)."""
        k = prec - self.prec
        if k >= 0:
            return DI(self.lo << k, self.hi << k, prec)
        return DI(_floor_div_pow2(self.lo, -k), _ceil_div_pow2(self.hi, -k), prec)

    def sign(self):
        """+1, -1, or None when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    @property
    def lo_q(self) -> Fraction:
        return Fraction(self.lo, 1 << self.prec)

    @property
    def hi_q(self) -> Fraction:
        return Fraction(self.hi, 1 << self.prec)

    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.prec)

    def mid(self) -> float:
        return (self.lo + self.hi) / 2 / (1 << self.prec) if self.prec < 1000 else float(
            Fraction(self.lo + self.hi, 2 << self.prec))

    def __float__(self):
        return float(Fraction(self.lo + self.hi, 2 << self.prec))

    def __repr__(self):
        return f"DI[{float(self.lo_q):.17g}, {float(self.hi_q):.17g}]"


def horner(coeffs, x: DI) -> DI:
    """Evaluate a dense polynomial (highest degree first) at an interval."""
    acc = DI.point(0, x.prec)
    for c in coeffs:
        acc = acc * x + DI.point(c, x.prec)
    return acc
