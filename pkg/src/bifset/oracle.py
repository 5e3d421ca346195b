"""Floating-point cross-checks: fibre censuses by marching squares, level sweeps,
and extrapolated limits of f along traced Milnor arcs.

Nothing here feeds the certified verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .errors import ResolutionTooCoarse, TraceDiverged
from .poly import BiPoly, differentiate

_JITTER = 1.0 / 1571.0

# marching-squares segment table: case -> pairs of cell edges (0 bottom, 1 right, 2 top, 3 left);
# corner bits: 1 = (x0, y0), 2 = (x1, y0), 4 = (x1, y1), 8 = (x0, y1)
_SEGMENTS = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),), 6: ((0, 2),), 7: ((3, 2),),
    8: ((2, 3),), 9: ((0, 2),), 11: ((1, 2),), 12: ((1, 3),), 13: ((0, 1),), 14: ((3, 0),),
}
# saddles: connectivity depends on the sign at the centre
_SADDLE = {
    (5, True): ((3, 2), (0, 1)), (5, False): ((3, 0), (1, 2)),
    (10, True): ((0, 3), (1, 2)), (10, False): ((0, 1), (2, 3)),
}


def to_float_evaluator(f: BiPoly):
    """A numpy-vectorised evaluator of ``f`` (Horner in y over Horner in x)."""
    dy = f.degree_in("y")
    rows = []
    for j in range(dy + 1):
        dx = max((i for (i, jj) in f.terms if jj == j), default=-1)
        rows.append([float(f.coeff(i, j)) for i in range(dx, -1, -1)])

    def ev(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        acc = np.zeros(np.broadcast(x, y).shape)
        for j in range(dy, -1, -1):
            px = np.zeros_like(acc)
            for c in rows[j]:
                px = px * x + c
            acc = acc * y + px
        return acc
    return ev


@dataclass
class FiberComponent:
    point_count: int
    min_norm: float
    max_norm: float
    touches_outer: bool


@dataclass
class FiberCensus:
    level: float
    annulus: Tuple[float, float]
    components: List[FiberComponent]
    grid_n: int
    saddle_cells: int = 0
    unresolved_cells: int = 0
    segments: list = field(default_factory=list)    # only filled on request, for plotting

    @property
    def count(self) -> int:
        return len(self.components)

    def detached(self, margin: float) -> List[FiberComponent]:
        """Components that stay clear of the inner circle."""
        return [c for c in self.components if c.min_norm > self.annulus[0] + margin]


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        p = self.parent.setdefault(a, a)
        while p != a:
            self.parent[a] = self.parent.setdefault(p, p)
            a, p = p, self.parent[p]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def fiber_census(f: BiPoly, t, R_in: float, R_out: float, grid_n: int = 256,
                 max_unresolved: float = 0.02, evaluator=None,
                 keep_segments: bool = False) -> FiberCensus:
    """Components of {f = t} inside the annulus R_in <= |q| <= R_out, by marching squares."""
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    ev = evaluator or to_float_evaluator(f)
    t = float(t)
    n = grid_n
    # a slightly shifted grid keeps coordinate axes (common fibre components) off the grid lines
    # the box overhangs the disk by two cells so the jitter never cuts the disk off
    w = R_out * (1 + 4.0 / n)
    g = np.linspace(-w, w, n + 1) + R_out * _JITTER
    X, Y = np.meshgrid(g, g, indexing="ij")        # X[i, j] = g[i], Y[i, j] = g[j]
    V = ev(X, Y) - t
    N = np.hypot(X, Y)
    S = V >= 0
    c00, c10, c11, c01 = S[:-1, :-1], S[1:, :-1], S[1:, 1:], S[:-1, 1:]
    case = c00 * 1 + c10 * 2 + c11 * 4 + c01 * 8
    n00, n10, n11, n01 = N[:-1, :-1], N[1:, :-1], N[1:, 1:], N[:-1, 1:]
    nmax = np.maximum(np.maximum(n00, n10), np.maximum(n11, n01))
    nmin = np.minimum(np.minimum(n00, n10), np.minimum(n11, n01))
    active = (case != 0) & (case != 15) & (nmax >= R_in) & (nmin <= R_out)
    h = g[1] - g[0]

    def edge_point(i, j, e):
        """Crossing on edge e of cell (i, j) by linear interpolation; returns (id, x, y)."""
        if e == 0:
            a, b, eid = (i, j), (i + 1, j), ("h", i, j)
        elif e == 2:
            a, b, eid = (i, j + 1), (i + 1, j + 1), ("h", i, j + 1)
        elif e == 3:
            a, b, eid = (i, j), (i, j + 1), ("v", i, j)
        else:
            a, b, eid = (i + 1, j), (i + 1, j + 1), ("v", i + 1, j)
        va, vb = V[a], V[b]
        s = va / (va - vb) if va != vb else 0.5
        x = X[a] + s * (X[b] - X[a])
        y = Y[a] + s * (Y[b] - Y[a])
        return eid, x, y

    dsu = _DSU()
    pts = {}
    outer_edges = set()
    saddles = unresolved = 0
    drawn = []
    idx = np.argwhere(active)
    for i, j in idx:
        i, j = int(i), int(j)
        cs = int(case[i, j])
        if cs in (5, 10):
            saddles += 1
            cx, cy = X[i, j] + h / 2, Y[i, j] + h / 2
            cv = float(ev(cx, cy)) - t
            scale = max(abs(V[i, j]), abs(V[i + 1, j]), abs(V[i, j + 1]), abs(V[i + 1, j + 1]))
            if abs(cv) <= 1e-12 * scale:
                # refine: majority sign on a 4x finer sub-grid around the centre
                sub = np.linspace(-h / 4, h / 4, 5)
                SX, SY = np.meshgrid(cx + sub, cy + sub, indexing="ij")
                sv = ev(SX, SY) - t
                pos, neg = int((sv > 0).sum()), int((sv < 0).sum())
                if pos == neg:
                    unresolved += 1
                cv = 1.0 if pos >= neg else -1.0
            segs = _SADDLE[(cs, cv >= 0)]
        else:
            segs = _SEGMENTS[cs]
        straddles_outer = nmax[i, j] > R_out
        for e1, e2 in segs:
            a = edge_point(i, j, e1)
            b = edge_point(i, j, e2)
            pts[a[0]] = a[1:]
            pts[b[0]] = b[1:]
            dsu.union(a[0], b[0])
            if keep_segments:
                drawn.append((a[1:], b[1:]))
            if straddles_outer:
                outer_edges.add(a[0])
    if idx.shape[0] and unresolved > max_unresolved * idx.shape[0]:
        raise ResolutionTooCoarse(f"{unresolved} of {idx.shape[0]} crossing cells are unresolved saddles")
    comps = {}
    for eid, (x, y) in pts.items():
        r = dsu.find(eid)
        nrm = math.hypot(x, y)
        c = comps.get(r)
        if c is None:
            comps[r] = [1, nrm, nrm, eid in outer_edges]
        else:
            c[0] += 1
            c[1] = min(c[1], nrm)
            c[2] = max(c[2], nrm)
            c[3] = c[3] or eid in outer_edges
    out = [FiberComponent(c[0], c[1], c[2], c[3]) for c in comps.values()]
    out.sort(key=lambda c: (c.min_norm, c.max_norm))
    return FiberCensus(t, (R_in, R_out), out, grid_n, saddles, unresolved, drawn)


# -- sweeps -----------------------------------------------------------------------------------

@dataclass
class SweepReport:
    value: float
    side: int
    levels: List[float]
    censuses: List[FiberCensus]
    vanishing: bool
    splitting: bool

    @property
    def counts(self) -> List[int]:
        return [c.count for c in self.censuses]

    @property
    def outer_counts(self) -> List[int]:
        return [sum(1 for q in c.components if q.touches_outer) for c in self.censuses]

    @property
    def escape_norms(self) -> List[float]:
        return [max((q.min_norm for q in c.components), default=0.0) for c in self.censuses]

    @property
    def any_signature(self) -> bool:
        return self.vanishing or self.splitting


def _escaping(norms: Sequence[float], R_out: float, run: int = 4, share: float = 0.25) -> bool:
    """A strictly increasing stretch of at least ``run`` levels gaining ``share`` of R_out."""
    start = 0
    for k in range(1, len(norms) + 1):
        if k == len(norms) or norms[k] <= norms[k - 1]:
            if k - start >= run and norms[k - 1] - norms[start] >= share * R_out:
                return True
            start = k
    return False


def sweep_census(f: BiPoly, lam, side: int, steps: int = 16, R_out: float = 8.0,
                 grid_n: int = 512, delta: float = 1.0, R_in: float = 0.0) -> SweepReport:
    """Census of {f = t} for t = lam + side * delta * 2**-k, k < steps.

    Vanishing signature: a component leaves the disk (the count drops) or the
    largest minimal norm climbs steadily toward the outer circle.  Splitting
    signature: the count rises, or the number of components reaching the
    outer circle changes.  Heuristic by nature.
    """
    if side not in (-1, 1):
        raise ValueError("side must be -1 (below) or +1 (above)")
    ev = to_float_evaluator(f)
    lam = float(lam)
    levels = [lam + side * delta * 2.0 ** -k for k in range(steps)]
    cens = [fiber_census(f, t, R_in, R_out, grid_n, evaluator=ev) for t in levels]
    counts = [c.count for c in cens]
    outer = [sum(1 for q in c.components if q.touches_outer) for c in cens]
    norms = [max((q.min_norm for q in c.components), default=0.0) for c in cens]
    drops = any(b < a for a, b in zip(counts, counts[1:]))
    rises = any(b > a for a, b in zip(counts, counts[1:]))
    vanishing = drops or _escaping(norms, R_out)
    splitting = rises or len(set(outer)) > 1
    return SweepReport(lam, side, levels, cens, vanishing, splitting)


# -- numeric limits along arcs -----------------------------------------------------------------

@dataclass
class ArcLimitEstimate:
    value: float
    error: float
    radii: List[float]
    values: List[float]


def _exact_eval(p: BiPoly, x: float, y: float) -> float:
    """p at the binary point (x, y), evaluated exactly and rounded once."""
    X, Y = Fraction(x), Fraction(y)
    return float(p(X, Y))


def trace_arc(h: BiPoly, start: Tuple[float, float], radii: Sequence[float], growth: float = 1.05):
    """Follow {h = 0} outward from ``start`` through the given radii (angles by Newton on each circle)."""
    hx, hy = differentiate(h, "x"), differentiate(h, "y")
    evx, evy = to_float_evaluator(hx), to_float_evaluator(hy)
    x0, y0 = start
    r = math.hypot(x0, y0)
    th = math.atan2(y0, x0)
    out = []
    targets = list(radii)
    while targets:
        goal = targets[0]
        r_next = min(goal, r * growth) if goal > r else goal
        th_new = th
        for _ in range(60):
            c, s = math.cos(th_new), math.sin(th_new)
            px, py = r_next * c, r_next * s
            g = _exact_eval(h, px, py)
            dg = float(r_next * (-s * evx(px, py) + c * evy(px, py)))
            if dg == 0 or not math.isfinite(dg):
                raise TraceDiverged("tangent direction lost while tracing")
            step = g / dg
            th_new -= step
            if abs(step) < 1e-15 * (1 + abs(th_new)):
                break
        else:
            raise TraceDiverged(f"Newton failed on the circle of radius {r_next:.6g}")
        if abs(th_new - th) > 0.5:
            raise TraceDiverged("trace jumped to another arc")
        r, th = r_next, th_new
        if r >= goal:
            out.append((r * math.cos(th), r * math.sin(th)))
            targets.pop(0)
    return out


def numeric_arc_limit(f: BiPoly, h: BiPoly, start: Tuple[float, float], R: float,
                      factor: float = 32.0, points: int = 11) -> ArcLimitEstimate:
    """Extrapolated limit of f along the arc through ``start``, traced to radius factor * R.

    Radii form a geometric sequence; Aitken's delta-squared process removes
    the leading power-law term.  The error bar is the spread of the last
    accelerated estimates.  Raises TraceDiverged when f grows without bound.
    """
    q = factor ** (1.0 / (points - 1))
    radii = [R * q ** k for k in range(points)]
    pts = trace_arc(h, start, radii)
    vals = [_exact_eval(f, x, y) for x, y in pts]
    d = [b - a for a, b in zip(vals, vals[1:])]
    ratios = [d[k + 1] / d[k] for k in range(len(d) - 1) if d[k] != 0]
    tail = ratios[-4:]
    scale = max(abs(v) for v in vals)
    # geometric growth of rounding-level values (f vanishing on the arc) is not divergence
    if tail and all(r_ > 1.05 for r_ in tail) and abs(vals[-1] - vals[0]) > 1e-8 * (1 + abs(vals[0])):
        direction = 1 if vals[-1] > vals[0] else -1
        raise TraceDiverged(f"f grows along the arc ({'+' if direction > 0 else '-'}inf)", direction)
    acc = []
    for k in range(len(vals) - 2):
        den = vals[k + 2] - 2 * vals[k + 1] + vals[k]
        if den == 0:
            acc.append(vals[k + 2])
        else:
            acc.append(vals[k + 2] - (vals[k + 2] - vals[k + 1]) ** 2 / den)
    est = acc[-1]
    spread = max(abs(a - est) for a in acc[-3:])
    err = 2 * spread + 1e-9 * (1 + scale) + abs(d[-1]) * 1e-3
    return ArcLimitEstimate(est, err, radii, vals)


# -- whole-report cross-check ------------------------------------------------------------------

def special_values(report) -> List[float]:
    """Critical values and finite arc limits of an analysis report, as sorted floats."""
    vals = {float(v) for v in report.critical_values}
    vals |= {float(a.limit.value) for a in report.arcs if a.limit is not None and a.limit.is_finite}
    return sorted(vals)


def boundary_values(report, R_out: float, h: BiPoly | None = None) -> List[float]:
    """Values of f where the Milnor arcs cross C_{R_out}.

    These are the critical values of f restricted to that circle: the
    disk-clipped fibres change topology there, so a sweep meant to see
    nothing must keep clear of them.
    """
    from .milnor import milnor_curve

    f = report.polynomial
    h = milnor_curve(f) if h is None else h
    out = []
    for a in report.arcs:
        (px, py), = trace_arc(h, a.sample.approx(), [R_out])
        out.append(_exact_eval(f, px, py))
    return sorted(out)


def typical_samples(specials: Sequence[float], count: int = 3,
                    avoid: Sequence[float] = ()) -> List[float]:
    """``count`` values away from every special value and every value in ``avoid``.

    Candidates are the midpoints of consecutive obstacles plus points beyond
    both ends; the ones farthest from all obstacles win.
    """
    obstacles = sorted(set(specials) | set(avoid))
    if not obstacles:
        return [float(k) for k in range(count)]
    span = max(1.0, obstacles[-1] - obstacles[0])
    cands = [(a + b) / 2 for a, b in zip(obstacles, obstacles[1:])]
    cands += [obstacles[0] - span / 2, obstacles[-1] + span / 2]
    cands += [obstacles[-1] + k * span for k in range(2, count + 2)]

    def clearance(t):
        return min(abs(t - s) for s in obstacles)
    cands.sort(key=lambda t: (-clearance(t), t))
    return sorted(cands[:count])


def sweep_delta(lam: float, specials: Sequence[float], cap: float = 1.0) -> float:
    """Sweep width at ``lam``: well short of every other special value."""
    gaps = [abs(s - lam) for s in specials if abs(s - lam) > 1e-12]
    return min([cap] + [0.4 * g for g in gaps])


def sweep_radius(R: float) -> float:
    return max(8.0, 2.4 * float(R))


@dataclass
class ArcCheck:
    arc_index: int
    expected: str
    estimate: float = math.nan
    error: float = math.nan
    diverged: int = 0            # +1 / -1 when the trace saw f grow without bound
    agrees: bool = False


@dataclass
class SweepCheck:
    value: float
    atypical: bool
    below: SweepReport
    above: SweepReport

    @property
    def signature(self) -> bool:
        return self.below.any_signature or self.above.any_signature

    @property
    def agrees(self) -> bool:
        return self.signature == self.atypical


@dataclass
class CrossCheck:
    arcs: List[ArcCheck]
    sweeps: List[SweepCheck]

    @property
    def disagreements(self) -> List[str]:
        out = [f"arc {c.arc_index}: exact {c.expected}, numeric "
               + (f"{c.estimate:.6g} +- {c.error:.2g}" if not c.diverged else
                  ("+inf" if c.diverged > 0 else "-inf"))
               for c in self.arcs if not c.agrees]
        out += [f"sweep at {s.value:.6g}: atypical={s.atypical}, signature={s.signature}"
                for s in self.sweeps if not s.agrees]
        return out


def check_arc_limits(report, h: BiPoly | None = None) -> List[ArcCheck]:
    from .milnor import milnor_curve

    f = report.polynomial
    h = milnor_curve(f) if h is None else h
    R = float(report.radius.R)
    out = []
    for a in report.arcs:
        chk = ArcCheck(a.index, str(a.limit))
        try:
            est = numeric_arc_limit(f, h, a.sample.approx(), R)
        except TraceDiverged as ex:
            chk.diverged = ex.direction
            want = {"+inf": 1, "-inf": -1}.get(chk.expected, None)
            chk.agrees = want is not None and ex.direction == want
        else:
            chk.estimate, chk.error = est.value, est.error
            chk.agrees = a.limit.is_finite and abs(est.value - float(a.limit.value)) <= est.error
        out.append(chk)
    return out


def check_sweeps(report, typical_count: int = 3, grid_n: int = 512, steps: int = 16) -> List[SweepCheck]:
    """Sweeps on both sides of each atypical value and of ``typical_count`` typical ones.

    Windows at typical values also stay clear of the boundary values on
    C_{R_out}; windows at atypical values only avoid the other special values.
    """
    f = report.polynomial
    specials = special_values(report)
    R_out = sweep_radius(report.radius.R)
    rim = boundary_values(report, R_out)
    atyp = [float(v) for v in report.atypical_values]
    plan = [(v, True, sweep_delta(v, specials)) for v in atyp]
    plan += [(v, False, sweep_delta(v, specials + rim))
             for v in typical_samples(specials, typical_count, rim)]
    out = []
    for lam, flag, d in plan:
        lo = sweep_census(f, lam, -1, steps, R_out, grid_n, d)
        hi = sweep_census(f, lam, 1, steps, R_out, grid_n, d)
        out.append(SweepCheck(lam, flag, lo, hi))
    return out


def cross_check(report, sweeps: bool = True, **kw) -> CrossCheck:
    """Numeric limits on every arc and, optionally, level sweeps at atypical and typical values."""
    return CrossCheck(check_arc_limits(report), check_sweeps(report, **kw) if sweeps else [])
