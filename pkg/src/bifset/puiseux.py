"""Points of the Milnor curve at infinity, real Newton-Puiseux half-branches there,
limits of f along them, and the pairing of half-branches with arc samples.

Half-branches are computed directly: in a chart (u, z) at a point of the
line at infinity we put z = side * w with w > 0 and look for every real
Puiseux series u(w) with u(0) = 0.  Because w > 0, w**(1/q) is the positive
real root and each real series is one half-branch; no deduplication of
conjugate halves is needed.  Coefficients live in exact real number fields.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import comb, gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import CountMismatch, DepthInsufficient, MatchingUnresolved, ZeroPolynomial
from .numberfield import FieldElement, NumberField, real_roots
from .poly import BiPoly, chart_localize, homogenize
from .realroots import AlgebraicReal, Sign, isolate_real_roots, to_int_primitive, upoly_derivative

MAX_NEWTON_LEVELS = 64


# -- infinity points ------------------------------------------------------------------------

@dataclass(frozen=True)
class InfinityPoint:
    """[a:1:0] (``a`` an AlgebraicReal) or [1:0:0] (``a`` is None)."""
    a: Optional[AlgebraicReal]

    @property
    def is_horizontal(self) -> bool:
        return self.a is None

    @property
    def field(self) -> NumberField:
        return NumberField.rationals() if self.a is None else NumberField.of(self.a)

    @property
    def slope(self) -> Optional[FieldElement]:
        """The chart slope as a field element (``None`` for [1:0:0])."""
        if self.a is None:
            return None
        K = self.field
        return K(self.a.rational) if self.a.is_rational else K.gen()

    def projective(self) -> str:
        if self.a is None:
            return "[1:0:0]"
        q = self.a.rational
        return f"[{q}:1:0]" if q is not None else f"[{self.a.decimal(6)[0]}:1:0]"

    def __repr__(self):
        return f"InfinityPoint({self.projective()})"


def infinity_points(h: BiPoly) -> List[InfinityPoint]:
    """Real points of the closure of {h = 0} on the line at infinity."""
    if h.is_zero():
        raise ZeroPolynomial("the zero polynomial has no points at infinity")
    top = h.top_form()
    d = h.degree
    coeffs = [Fraction(top.coeff(i, d - i)) for i in range(d, -1, -1)]
    pts = []
    if any(coeffs[:-1]):
        pts = [InfinityPoint(a) for a in isolate_real_roots(to_int_primitive(coeffs))]
    if top.coeff(d, 0) == 0:
        pts.append(InfinityPoint(None))
    return pts


def local_equation(p: BiPoly, point: InfinityPoint, K: NumberField) -> Dict[Tuple[int, int], FieldElement]:
    """The homogenized ``p`` in the chart at ``point``, as {(i, j): coefficient of u^i z^j}."""
    loc = chart_localize(homogenize(p), point)
    return {m: (c if isinstance(c, FieldElement) else K(Fraction(c))) for m, c in loc.items()
            if c}


# -- limits -----------------------------------------------------------------------------------

class LimitKind(enum.Enum):
    FINITE = "Finite"
    PLUS_INFINITY = "PlusInfinity"
    MINUS_INFINITY = "MinusInfinity"


@dataclass(frozen=True)
class LimitValue:
    kind: LimitKind
    value: Optional[AlgebraicReal] = None

    @classmethod
    def finite(cls, v: AlgebraicReal) -> "LimitValue":
        return cls(LimitKind.FINITE, v)

    @property
    def is_finite(self) -> bool:
        return self.kind == LimitKind.FINITE

    def __str__(self):
        if self.kind == LimitKind.PLUS_INFINITY:
            return "+inf"
        if self.kind == LimitKind.MINUS_INFINITY:
            return "-inf"
        q = self.value.rational
        return str(q) if q is not None else self.value.decimal(12)[0]


PLUS_INF = LimitValue(LimitKind.PLUS_INFINITY)
MINUS_INF = LimitValue(LimitKind.MINUS_INFINITY)


# -- truncated series over a number field ------------------------------------------------------

def _s_mul(a, b, n, K):
    out = [K.zero()] * min(n, len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _s_add(a, b, K):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else K.zero()) + (b[i] if i < len(b) else K.zero()) for i in range(n)]


def _s_div(a, b, n, K):
    """a / b modulo s^n; b[0] must be nonzero."""
    inv0 = b[0].inverse()
    out = []
    for k in range(n):
        acc = a[k] if k < len(a) else K.zero()
        for j in range(1, min(k, len(b) - 1) + 1):
            if b[j]:
                acc = acc - b[j] * out[k - j]
        out.append(acc * inv0)
    return out


def _s_valuation(a) -> Optional[int]:
    for i, c in enumerate(a):
        if c:
            return i
    return None


def _eval_in_x(rows, x, n, K, deriv=False):
    """sum_i rows[i](s) * x(s)^i (or its x-derivative) modulo s^n, by Horner."""
    deg = len(rows) - 1
    acc: list = []
    for i in range(deg, (0 if not deriv else 1) - 1, -1):
        row = rows[i]
        if deriv:
            row = [c * i for c in row]
        acc = _s_add(_s_mul(acc, x, n, K), row[:n], K)
    return acc


def _rows(G: Dict[Tuple[int, int], FieldElement], n: int, K) -> List[list]:
    """G as a list over x-degree of s-series truncated at n."""
    deg = max(i for i, _ in G)
    rows = [[K.zero()] * n for _ in range(deg + 1)]
    for (i, j), c in G.items():
        if j < n:
            rows[i][j] = c
    return rows


def _smooth_solution(G, n: int, K) -> list:
    """The power series root x(s), x(0) = 0, of G with G_x(0, 0) != 0, modulo s^n."""
    if n <= 0:
        return []
    rows = _rows(G, n, K)
    x: list = [K.zero()]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        r = _eval_in_x(rows, x, prec, K)
        if _s_valuation(r) is None:
            continue
        d = _eval_in_x(rows, x, prec, K, deriv=True)
        x = _s_add(x, [-c for c in _s_div(r, d, prec, K)], K)[:prec]
    if _s_valuation(_eval_in_x(rows, x, n, K)) is not None:
        raise AssertionError("Newton iteration did not converge on a simple root")
    return x + [K.zero()] * (n - len(x))


# -- Newton-Puiseux ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Step:
    """One choice at a node of the Newton-Puiseux tree.

    ``gamma`` is the exponent of the new term relative to the node's
    parameter (``None`` for the terminal solution x = 0), ``rank`` the rank of
    the chosen root among the real roots of the edge polynomial, ``csign``
    the sign of that root.
    """
    gamma: Optional[Fraction]
    rank: int = 0
    csign: int = 0


def _step_cmp(a: _Step, b: _Step) -> int:
    """Sign of x_a - x_b for two solutions diverging at the same node."""
    if a.gamma is None:
        return -b.csign
    if b.gamma is None:
        return a.csign
    if a.gamma < b.gamma:
        return a.csign
    if a.gamma > b.gamma:
        return -b.csign
    return (a.rank > b.rank) - (a.rank < b.rank)


@dataclass
class PuiseuxBranch:
    """A real half-branch u = sum_j series[j] T^j, z = side * T^n, T > 0, at ``at``."""
    at: InfinityPoint
    side: int
    n: int
    series: List[FieldElement]
    field: NumberField
    embed0: FieldElement                # image of the chart field's generator
    path: Tuple[_Step, ...]
    exact: bool = False                 # the series is a polynomial solution, not truncated
    limit: Optional[LimitValue] = None

    @property
    def trunc_depth(self) -> int:
        return len(self.series) - 1

    @property
    def half(self) -> str:
        return "PlusZ" if self.side > 0 else "MinusZ"

    @property
    def coefficients(self) -> List[Tuple[int, AlgebraicReal]]:
        return [(j, c.to_algebraic()) for j, c in enumerate(self.series) if c]

    def leading_sign(self) -> int:
        """Sign of u along the half-branch near infinity (0 when u vanishes identically)."""
        st = self.path[0]
        return 0 if st.gamma is None else st.csign

    def __repr__(self):
        terms = [f"{float(c):.6g}*T^{j}" for j, c in enumerate(self.series) if c][:4]
        return (f"PuiseuxBranch({self.at.projective()}, side={self.side:+d}, n={self.n}, "
                f"u={' + '.join(terms) or '0'}{'' if self.exact else ' + ...'})")


def _lower_edges(G) -> List[Tuple[int, int, int, int]]:
    """Edges (i_start, j_start, i_end, j_end) of the Newton polygon from the x = 0 axis to the s = 0 axis."""
    j0 = min(j for i, j in G if i == 0)
    i1 = min(i for i, j in G if j == 0)
    pts = {}
    for i, j in G:
        if i <= i1 and j <= j0:
            pts[i] = min(j, pts.get(i, j))
    edges = []
    ci, cj = 0, j0
    while ci < i1:
        best = None
        for i, j in pts.items():
            if i <= ci:
                continue
            slope = Fraction(j - cj, i - ci)
            if best is None or slope < best[0] or (slope == best[0] and i > best[1]):
                best = (slope, i, j)
        _, ni, nj = best
        edges.append((ci, cj, ni, nj))
        ci, cj = ni, nj
    return edges


def _map_field(items, L: NumberField, image):
    return {k: L.embed(v, image) for k, v in items.items()}


class _Search:
    def __init__(self, point: InfinityPoint, side: int, order: Callable[[int], int]):
        self.point, self.side, self.order = point, side, order
        self.out: List[PuiseuxBranch] = []

    def emit(self, K, emb0, A, E, Q, x_tail, path, exact):
        N = self.order(Q)
        series = [K.zero()] * N
        for e, c in A.items():
            if e < N:
                series[e] = series[e] + c
        for k, c in enumerate(x_tail):
            if E + k < N:
                series[E + k] = series[E + k] + c
        self.out.append(PuiseuxBranch(self.point, self.side, Q, series, K, emb0, tuple(path), exact))

    def run(self, G, K, emb0, A, E, Q, path, level=0):
        if level > MAX_NEWTON_LEVELS:
            raise DepthInsufficient("Newton-Puiseux recursion did not separate the branches")
        jmin = min(j for _, j in G)
        if jmin:
            G = {(i, j - jmin): c for (i, j), c in G.items()}
        if not any(i == 0 for i, _ in G):
            self.emit(K, emb0, A, E, Q, [], path + [_Step(None)], True)
            k = min(i for i, _ in G)
            G = {(i - k, j): c for (i, j), c in G.items()}
        if (0, 0) in G:
            return
        for ci, cj, ni, nj in _lower_edges(G):
            g = gcd(cj - nj, ni - ci)
            p, q = (cj - nj) // g, (ni - ci) // g
            m = p * ci + q * cj
            phi = [K.zero()] * (ni - ci + 1)
            for (i, j), c in G.items():
                if p * i + q * j == m:
                    phi[i - ci] = c
            roots = real_roots(phi, K)
            for rank, r in enumerate(roots):
                L = r.field
                if L is not K and L != K:
                    GL = _map_field(G, L, r.image)
                    AL = _map_field(A, L, r.image)
                    emb = L.embed(emb0, r.image)
                else:
                    L, GL, AL, emb = K, G, A, emb0
                c = r.value
                E2, Q2 = q * E + p, Q * q
                A2 = {e * q: v for e, v in AL.items()}
                A2[E2] = A2.get(E2, L.zero()) + c
                step = _Step(Fraction(p, q), rank, c.sign())
                if r.multiplicity == 1:
                    need = self.order(Q2) - E2
                    G2 = _substitute(GL, c, p, q, m, L, need)
                    tail = _smooth_solution(G2, need, L)
                    self.emit(L, emb, A2, E2, Q2, tail, path + [step], False)
                else:
                    G2 = _substitute(GL, c, p, q, m, L, None)
                    self.run(G2, L, emb, A2, E2, Q2, path + [step], level + 1)


def _substitute(G, c, p, q, m, K, cutoff):
    """G(s^p (c + x), s^q) / s^m, dropping s-powers >= cutoff when given."""
    out: Dict[Tuple[int, int], FieldElement] = {}
    maxi = max(i for i, _ in G)
    cpow = [K.one()]
    for _ in range(maxi):
        cpow.append(cpow[-1] * c)
    for (i, j), a in G.items():
        e = p * i + q * j - m
        if cutoff is not None and e >= cutoff:
            continue
        for k in range(i + 1):
            v = a * cpow[i - k] * comb(i, k)
            key = (k, e)
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


def puiseux_branches(h_local, point: InfinityPoint, order: Callable[[int], int] | int,
                     K: NumberField | None = None) -> List[PuiseuxBranch]:
    """All real half-branches of the germ ``h_local`` (in (u, z)) at (0, 0), for z > 0 and z < 0.

    ``order(n)`` is the number of series terms wanted for ramification n.
    Branches are returned in increasing order of u, separately for each side.
    """
    if isinstance(order, int):
        depth = order
        order = lambda n: depth
    K = point.field if K is None else K
    if isinstance(h_local, BiPoly):
        h_local = {m: (c if isinstance(c, FieldElement) else K(Fraction(c)))
                   for m, c in h_local.items() if c}
    if not h_local:
        raise ZeroPolynomial("zero germ")
    out = []
    for side in (1, -1):
        G = {(i, j): (c if side > 0 or j % 2 == 0 else -c) for (i, j), c in h_local.items()}
        search = _Search(point, side, order)
        search.run(G, K, K.gen(), {}, 0, 1, [])
        search.out.sort(key=cmp_to_key(branch_cmp_local))
        out.extend(search.out)
    return out


def branch_cmp_local(a: PuiseuxBranch, b: PuiseuxBranch) -> int:
    """Order of u along two half-branches at one point and side."""
    for sa, sb in zip(a.path, b.path):
        if sa != sb:
            return _step_cmp(sa, sb)
    if len(a.path) != len(b.path):
        raise AssertionError("a half-branch path is a prefix of another")
    return 0


# -- limit of f along a half-branch ------------------------------------------------------------

def branch_limit(f: BiPoly, b: PuiseuxBranch, f_local=None, extra: int = 0) -> LimitValue:
    """lim f along the half-branch, from f_hat(u(T), side T^n) / (side T^n)^d, d = deg f."""
    d = f.degree
    need = d * b.n + 1
    if b.trunc_depth + 1 < need + extra and not b.exact:
        raise DepthInsufficient(f"need {need + extra} terms, have {b.trunc_depth + 1}")
    L = b.field
    if f_local is None:
        f_local = local_equation(f, b.at, b.at.field)
    N = need + extra
    u = list(b.series[:N]) + [L.zero()] * max(0, N - len(b.series))
    deg_u = max(i for i, _ in f_local)
    rows = [[L.zero()] * N for _ in range(deg_u + 1)]
    for (i, j), c in f_local.items():
        e = b.n * j
        if e < N:
            cc = L.embed(c, b.embed0)
            rows[i][e] = rows[i][e] + (cc if b.side > 0 or j % 2 == 0 else -cc)
    F = _eval_in_x(rows, u, N, L)
    v = _s_valuation(F)
    sd = 1 if (b.side > 0 or d % 2 == 0) else -1
    if v is None or v > d * b.n:
        return LimitValue.finite(AlgebraicReal.from_rational(0))
    if v == d * b.n:
        return LimitValue.finite((F[v] * sd).to_algebraic())
    return PLUS_INF if F[v].sign() * sd > 0 else MINUS_INF


# -- global order and matching ------------------------------------------------------------------

def _angle_group(b: PuiseuxBranch) -> int:
    if b.at.is_horizontal:
        if b.side > 0:
            return 4 if b.leading_sign() < 0 else 0
        return 2
    return 1 if b.side > 0 else 3


def angular_cmp(a: PuiseuxBranch, b: PuiseuxBranch) -> int:
    """Counterclockwise order, from angle 0, of the half-branches near infinity."""
    ga, gb = _angle_group(a), _angle_group(b)
    if ga != gb:
        return -1 if ga < gb else 1
    if a.at != b.at:
        # directions [a:1:0]: larger slope, smaller angle
        return -1 if a.at.a > b.at.a else 1
    c = branch_cmp_local(a, b)
    return c if a.at.is_horizontal else -c


def sort_at_infinity(branches: Sequence[PuiseuxBranch]) -> List[PuiseuxBranch]:
    return sorted(branches, key=cmp_to_key(angular_cmp))


def _taylor_sign(p: Sequence[Fraction], x0: AlgebraicReal):
    """(m, sign) of the first non-vanishing derivative of p at x0."""
    m = 0
    q = list(p)
    fact = 1
    while q:
        s = x0.sign_of(q)
        if s != Sign.ZERO:
            return m, int(s)
        m += 1
        fact *= m
        q = upoly_derivative(q)
    raise AssertionError("zero polynomial")


def axis_rotation(h: BiPoly, R) -> int:
    """Net number of arcs crossing the ray {y = 0, x >= R} upwards, going outward.

    An arc whose sample sits at angle 0 on C_R and then dips below the axis
    counts as one downward crossing.
    """
    R = Fraction(R)
    d = h.degree_in("x")
    on_axis = [Fraction(h.coeff(i, 0)) for i in range(d, -1, -1)]
    if not any(on_axis):
        return 0        # the x-axis is a component; nothing crosses it outside the disk
    hy = BiPoly({(i, j - 1): c * j for (i, j), c in h.items() if j >= 1})
    dy = hy.degree_in("x") if not hy.is_zero() else 0
    hy0 = [Fraction(hy.coeff(i, 0)) for i in range(dy, -1, -1)]
    count = 0
    Ra = AlgebraicReal.from_rational(R)
    for x0 in isolate_real_roots(to_int_primitive(on_axis)):
        if x0 < Ra:
            continue
        m, cm = _taylor_sign(on_axis, x0)
        sy = int(x0.sign_of(hy0)) if any(hy0) else 0
        if sy == 0:
            raise MatchingUnresolved(f"the Milnor curve is vertical at ({x0}, 0)")
        after = -cm * sy
        before = after * (-1) ** m
        if x0 == Ra:
            count -= 1 if after < 0 else 0
        elif before < 0 < after:
            count += 1
        elif after < 0 < before:
            count -= 1
    return count


def match_arcs(samples: Sequence, branches: Sequence[PuiseuxBranch], h: BiPoly, R) -> Dict[int, PuiseuxBranch]:
    """Pair each arc sample (ordered on C_R) with the half-branch it continues into.

    Arcs outside the disk are disjoint and cross every larger circle exactly
    once, so the cyclic order on C_R is the cyclic order at infinity; the
    offset between the two labelings is the net number of crossings of the
    positive x-axis beyond R.
    """
    s = len(samples)
    if s != len(branches):
        raise CountMismatch(f"{s} arc samples on C_R but {len(branches)} real half-branches")
    if s == 0:
        return {}
    ordered = sort_at_infinity(branches)
    shift = axis_rotation(h, R)
    return {samp.arc_index: ordered[(samp.arc_index - 1 + shift) % s] for samp in samples}


def all_branches(h: BiPoly, f: BiPoly, trunc_extra: int = 5):
    """Infinity points, and their half-branches with limits of f, in angular order."""
    d = f.degree
    pts = infinity_points(h)
    out = []
    for pt in pts:
        K = pt.field
        loc = local_equation(h, pt, K)
        floc = local_equation(f, pt, K)
        bs = puiseux_branches(loc, pt, lambda n: d * n + 1 + trunc_extra, K)
        for b in bs:
            b.limit = branch_limit(f, b, floc, trunc_extra)
        out.extend(bs)
    return pts, sort_at_infinity(out)
