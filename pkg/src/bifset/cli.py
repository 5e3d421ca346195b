"""Command line front end: expression parser, analysis driver, reports and plots."""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import AnalysisError, BifsetError, DegreeLimitExceeded, InputError, PolySyntaxError
from .poly import BiPoly, format_poly

SCHEMA_VERSION = "1.0"
DEGREE_CAP = 64
CONSTANT_EXPONENT_CAP = 4096

# -- parser ---------------------------------------------------------------------------------
#
#   expr     := ('+'|'-')? term (('+'|'-') term)*
#   term     := factor ('*'? factor)*          juxtaposition multiplies
#   factor   := base ('^' uint)?
#   base     := rational | 'x' | 'y' | '(' expr ')'
#   rational := uint ('/' uint)?
#
# Whitespace is dropped before tokenizing, so "1 2" reads as 12.


class _Parser:
    def __init__(self, text: str, cap: int):
        self.cap = cap
        # (char, byte offset) for every non-space character
        self.chars = []
        off = 0
        for ch in text:
            if not ch.isspace():
                self.chars.append((ch, off))
            off += len(ch.encode("utf-8"))
        self.end = off
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.chars[self.i][0] if self.i < len(self.chars) else None

    def offset(self) -> int:
        return self.chars[self.i][1] if self.i < len(self.chars) else self.end

    def fail(self, msg: str):
        raise PolySyntaxError(msg, self.offset())

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek()
            self.fail(f"expected '{ch}' but found " + (f"'{got}'" if got else "end of input"))
        self.i += 1

    def uint(self) -> int:
        start = self.i
        while self.peek() is not None and self.peek() in "0123456789":
            self.i += 1
        if start == self.i:
            self.fail("expected a digit")
        return int("".join(c for c, _ in self.chars[start:self.i]))

    def parse(self) -> BiPoly:
        if not self.chars:
            self.fail("empty expression")
        p = self.expr()
        if self.peek() is not None:
            self.fail(f"unexpected '{self.peek()}'")
        return p

    def expr(self) -> BiPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.i += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts_base(self) -> bool:
        c = self.peek()
        return c is not None and (c in "xy(" or c.isdigit())

    def term(self) -> BiPoly:
        acc = self.factor()
        while True:
            if self.peek() == "*":
                self.i += 1
            elif not self._starts_base():
                return acc
            at = self.offset()
            rhs = self.factor()
            if not acc.is_zero() and not rhs.is_zero() and acc.degree + rhs.degree > self.cap:
                raise DegreeLimitExceeded(f"degree exceeds the cap {self.cap} at byte {at}")
            acc = acc * rhs

    def factor(self) -> BiPoly:
        b = self.base()
        if self.peek() != "^":
            return b
        self.i += 1
        at = self.offset()
        e = self.uint()
        if b.is_constant():
            if e > CONSTANT_EXPONENT_CAP:
                raise InputError(f"exponent {e} on a constant is too large (byte {at})")
        elif b.degree * e > self.cap:
            raise DegreeLimitExceeded(f"degree {b.degree * e} exceeds the cap {self.cap} at byte {at}")
        return b ** e

    def base(self) -> BiPoly:
        c = self.peek()
        if c == "x":
            self.i += 1
            return BiPoly.x()
        if c == "y":
            self.i += 1
            return BiPoly.y()
        if c == "(":
            self.i += 1
            p = self.expr()
            self.expect(")")
            return p
        if c is not None and c.isdigit():
            num = self.uint()
            if self.peek() == "/":
                self.i += 1
                at = self.offset()
                den = self.uint()
                if den == 0:
                    raise PolySyntaxError("zero denominator", at)
                return BiPoly.const(Fraction(num, den))
            return BiPoly.const(num)
        self.fail("expected a number, 'x', 'y' or '('" if c is None else f"unexpected '{c}'")


def parse_input(text: str, degree_cap: int = DEGREE_CAP) -> BiPoly:
    """Parse a polynomial in x and y with rational coefficients."""
    return _Parser(text, degree_cap).parse()


# -- serialization --------------------------------------------------------------------------

def _decimal(lo: Fraction, hi: Fraction, digits: int):
    """``digits`` significant digits of the midpoint of [lo, hi], and a bound on the distance
    from that decimal to any point of the interval."""
    mid = (lo + hi) / 2
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(mid.numerator) / Decimal(mid.denominator)
    approx = Fraction(d)
    return str(d), max(abs(approx - lo), abs(approx - hi))


def algebraic_json(v, digits: int) -> dict:
    text, err = v.decimal(digits)
    out = {"minpoly": [int(c) for c in v.minpoly],
           "isolator": [str(v.lo), str(v.hi)],
           "decimal": text,
           "error": f"{err:.1e}"}
    q = v.rational
    if q is not None:
        out["rational"] = str(q)
    return out


def _limit_json(lim, digits: int):
    if lim is None:
        return None
    if lim.is_finite:
        return {"kind": "finite", "value": algebraic_json(lim.value, digits)}
    return {"kind": "+inf" if str(lim) == "+inf" else "-inf"}


def _point_json(box, digits: int) -> dict:
    prec = int(digits * 3.33) + 16
    xs, ys = box.enclosure(prec)
    xt, xe = _decimal(xs.lo_q, xs.hi_q, digits)
    yt, ye = _decimal(ys.lo_q, ys.hi_q, digits)
    return {"x": xt, "y": yt, "error": f"{float(max(xe, ye)):.1e}"}


def _fraction_text(q) -> str:
    return str(Fraction(q))


def report_json(report, source: str, digits: int = 12, cross=None) -> dict:
    pts = list(report.infinity_points)
    prim = report.primitivity
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {"text": source, "parsed": None if report.source is None else format_poly(report.source)},
        "analysed_polynomial": format_poly(report.polynomial),
        "primitivity": {
            "primitive": prim.primitive,
            "center": None if prim.center is None else [_fraction_text(c) for c in prim.center],
            "radial_profile": None if prim.radial_profile is None else [_fraction_text(c) for c in prim.radial_profile],
            "translation": [_fraction_text(c) for c in prim.translation],
        },
        "radius": {"R": _fraction_text(report.radius.R),
                   "certified_bound": _fraction_text(report.radius.certified_bound),
                   "overridden": report.radius.overridden},
        "critical_values": [algebraic_json(v, digits) for v in report.critical_values],
        "infinity_points": [{"projective": p.projective(),
                             "slope": None if p.a is None else algebraic_json(p.a, digits)} for p in pts],
        "arcs": [],
        "clusters": [],
        "atypical_regular_values": [
            {"value": algebraic_json(v, digits), "phenomena": sorted(str(p) for p in ph)}
            for v, ph in report.atypical_regular_values],
        "singular_arc_values": [algebraic_json(v, digits) for v in report.singular_arc_values],
        "bifurcation_set": [algebraic_json(v, digits) for v in report.bifurcation_set],
    }
    for a in report.arcs:
        b = a.branch
        doc["arcs"].append({
            "index": a.index,
            "sample": _point_json(a.sample.point, digits),
            "monotonicity": str(a.monotonicity),
            "rho_type": None if a.rho_type is None else str(a.rho_type),
            "tower_order": a.tower_order,
            "band_before": None if a.band_before is None else int(a.band_before),
            "band_after": None if a.band_after is None else int(a.band_after),
            "limit": _limit_json(a.limit, digits),
            "branch": None if b is None else {"infinity_point": pts.index(b.at) if b.at in pts else None,
                                               "side": b.side, "ramification": b.n},
        })
    for c in report.clusters:
        doc["clusters"].append({
            "arc_indices": list(c.arc_indices),
            "limit": _limit_json(c.value, digits),
            "direction": str(c.direction),
            "parity": str(c.parity),
            "extremal_count": c.extremal_count,
            "phenomenon": None if c.phenomenon is None else str(c.phenomenon),
        })
    if cross is not None:
        doc["oracle"] = {
            "arcs": [{"index": c.arc_index, "expected": c.expected,
                      "estimate": None if math.isnan(c.estimate) else c.estimate,
                      "error": None if math.isnan(c.error) else c.error,
                      "diverged": c.diverged, "agrees": c.agrees} for c in cross.arcs],
            "sweeps": [{"value": s.value, "atypical": s.atypical, "signature": s.signature,
                        "counts_below": s.below.counts, "counts_above": s.above.counts,
                        "agrees": s.agrees} for s in cross.sweeps],
            "disagreements": cross.disagreements,
        }
    return doc


def _value_text(v, digits: int) -> str:
    q = v.rational
    return str(q) if q is not None else v.decimal(digits)[0]


def report_text(report, source: str, digits: int = 12, cross=None) -> str:
    lines = [f"f = {source.strip()}"]
    prim = report.primitivity
    if prim.primitive:
        lines.append("primitive: yes")
    else:
        cx, cy = prim.center
        tx, ty = prim.translation
        lines.append(f"primitive: no, f = P(rho_a) with a = ({cx}, {cy})")
        lines.append(f"translation: analysing f(x + {tx}, y + {ty}) = {format_poly(report.polynomial)}")
    rad = report.radius
    lines.append(f"radius: R = {rad.R}" + (" (override)" if rad.overridden else "")
                 + f", certified bound {float(rad.certified_bound):.6g}")
    crit = ", ".join(_value_text(v, digits) for v in report.critical_values) or "none"
    lines.append(f"critical values: {crit}")
    lines.append("points at infinity: " + (", ".join(p.projective() for p in report.infinity_points) or "none"))
    lines.append(f"arcs on C_{rad.R}: {len(report.arcs)}")
    for a in report.arcs:
        x, y = a.sample.approx()
        rt = "-" if a.rho_type is None else str(a.rho_type)
        lines.append(f"  {a.index:>3}  ({x:+.6f}, {y:+.6f})  {str(a.monotonicity):<10}  {rt:<12}  {a.limit}")
    lines.append(f"clusters: {len(report.clusters)}")
    for c in report.clusters:
        ph = "" if c.phenomenon is None else f"  {c.phenomenon}"
        idx = ",".join(str(i) for i in c.arc_indices)
        lines.append(f"  arcs {{{idx}}}  limit {c.value}  {c.direction}  {c.parity} ({c.extremal_count} extremal){ph}")
    if report.atypical_regular_values:
        atyp = ", ".join(f"{_value_text(v, digits)} ({', '.join(sorted(str(p) for p in ph))})"
                         for v, ph in report.atypical_regular_values)
    else:
        atyp = "none"
    lines.append(f"atypical regular values: {atyp}")
    bif = ", ".join(_value_text(v, digits) for v in report.bifurcation_set)
    lines.append(f"bifurcation set: {{{bif}}}")
    if cross is not None:
        dis = cross.disagreements
        lines.append(f"oracle: {len(cross.arcs)} arc limits, {len(cross.sweeps)} sweeps, "
                     f"{len(dis)} disagreements")
        lines.extend(f"  ! {d}" for d in dis)
    return "\n".join(lines) + "\n"


# -- SVG ------------------------------------------------------------------------------------

_SIZE = 640
_MONO_COLOR = {"Increasing": "#b03a2e", "Decreasing": "#2e5fa3", "Singular": "#555555"}
_BAND_COLOR = {1: "#f2c4bd", -1: "#bcd0ee"}


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_svg(report, levels: Sequence[float] = (), grid_n: int = 256) -> str:
    """A picture of C_R with the arc samples, band signs, optional fibres and a cluster legend."""
    from .oracle import fiber_census

    R = float(report.radius.R)
    W = 1.35 * R
    half = _SIZE / 2
    s = (half - 20) / W

    def sx(x):
        return _fmt(half + x * s)

    def sy(y):
        return _fmt(half - y * s)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_SIZE}" '
           f'height="{_SIZE + 24 * (len(report.clusters) + 2)}" font-family="sans-serif" font-size="12">',
           '<rect width="100%" height="100%" fill="white"/>']
    arcs = report.arcs
    n = len(arcs)
    r1, r2 = R, 1.08 * R
    for i, a in enumerate(arcs):
        sign = a.band_after
        if sign is None:
            continue
        t0 = a.sample.angle
        t1 = arcs[(i + 1) % n].sample.angle
        if t1 <= t0:
            t1 += 2 * math.pi
        # split so no piece spans more than pi (keeps the SVG arc flags trivial)
        cuts = [t0 + (t1 - t0) * k / 4 for k in range(5)]
        for u, v in zip(cuts, cuts[1:]):
            d = (f"M {sx(r1 * math.cos(u))} {sy(r1 * math.sin(u))} "
                 f"A {_fmt(r1 * s)} {_fmt(r1 * s)} 0 0 0 {sx(r1 * math.cos(v))} {sy(r1 * math.sin(v))} "
                 f"L {sx(r2 * math.cos(v))} {sy(r2 * math.sin(v))} "
                 f"A {_fmt(r2 * s)} {_fmt(r2 * s)} 0 0 1 {sx(r2 * math.cos(u))} {sy(r2 * math.sin(u))} Z")
            out.append(f'<path d="{d}" fill="{_BAND_COLOR[int(sign)]}" stroke="none"/>')
    for k, t in enumerate(levels):
        cen = fiber_census(report.polynomial, t, 0.0, 1.3 * R, grid_n, keep_segments=True)
        shade = ["#333333", "#7d3c98", "#1e8449", "#ca6f1e"][k % 4]
        parts = " ".join(f"M {sx(p[0])} {sy(p[1])} L {sx(q[0])} {sy(q[1])}" for p, q in cen.segments)
        if parts:
            out.append(f'<path d="{parts}" fill="none" stroke="{shade}" stroke-width="1"/>')
    out.append(f'<circle cx="{_fmt(half)}" cy="{_fmt(half)}" r="{_fmt(R * s)}" fill="none" stroke="black"/>')
    for a in arcs:
        x, y = a.sample.approx()
        col = _MONO_COLOR[str(a.monotonicity)]
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="4" fill="{col}"/>')
        lx, ly = 1.18 * x, 1.18 * y
        out.append(f'<text x="{sx(lx)}" y="{sy(ly)}" text-anchor="middle" dominant-baseline="middle">'
                   f'{a.index}</text>')
    y0 = _SIZE + 16
    out.append(f'<text x="10" y="{y0}">R = {report.radius.R}; bands: red J &gt; 0, blue J &lt; 0'
               + (f"; fibres at {', '.join(f'{t:g}' for t in levels)}" if levels else "") + "</text>")
    for k, c in enumerate(report.clusters):
        idx = ",".join(str(i) for i in c.arc_indices)
        ph = "" if c.phenomenon is None else f", {c.phenomenon}"
        out.append(f'<text x="10" y="{y0 + 24 * (k + 1)}">arcs {{{idx}}}: limit {c.value}, '
                   f'{c.direction}, {c.parity}{ph}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- driver ---------------------------------------------------------------------------------

class _Args(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _diagnose("UsageError", message, 1, None)
        sys.exit(1)


def _uint(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _levels(text: str) -> List[float]:
    try:
        return [float(Fraction(t.strip())) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Args(prog="bifset", description="Certified bifurcation sets of real polynomials in two variables.")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyse a polynomial and report its bifurcation set")
    a.add_argument("polynomial", help="expression in x and y, or '-' to read it from stdin")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--plot", metavar="PATH", help="write an SVG picture of the arcs")
    a.add_argument("--radius-override", type=_rational, metavar="RATIONAL")
    a.add_argument("--trunc-extra", type=_uint, default=5, metavar="UINT")
    a.add_argument("--digits", type=_uint, default=12, metavar="UINT")
    a.add_argument("--oracle", choices=("off", "check"), default="off")
    a.add_argument("--levels", type=_levels, default=[], metavar="CSV")
    a.add_argument("-o", "--output", metavar="PATH", help="write the report here instead of stdout")
    q = sub.add_parser("parse", help="parse an expression and print it back in canonical form")
    q.add_argument("polynomial")
    return p


_FORMAT = "text"


def _diagnose(kind: str, message: str, code: int, offset):
    if _FORMAT == "json":
        d = {"error": kind, "message": message, "exit_code": code}
        if offset is not None:
            d["offset"] = offset
        print(json.dumps(d, sort_keys=True), file=sys.stderr)
    else:
        where = f" (byte {offset})" if offset is not None else ""
        print(f"bifset: {kind}: {message}{where}", file=sys.stderr)


def run_analysis(text: str, radius_override=None, trunc_extra: int = 5, oracle: str = "off"):
    """Parse and analyse; returns (report, cross-check or None)."""
    from .pipeline import analyze

    f = parse_input(text)
    report = analyze(f, radius_override=radius_override, trunc_extra=trunc_extra)
    cross = None
    if oracle == "check":
        from .oracle import cross_check

        cross = cross_check(report)
    return report, cross


_VALUED = ("--levels", "--radius-override", "--plot", "--output", "-o")


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    """argparse takes "-0.1,0.1" for an option; glue such values onto their flag."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUED:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt != "-":
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    global _FORMAT
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    _FORMAT = getattr(args, "format", "text")
    text = args.polynomial
    if text == "-":
        text = sys.stdin.read()
    try:
        if args.command == "parse":
            print(format_poly(parse_input(text)))
            return 0
        if args.digits < 1:
            raise InputError("--digits must be at least 1")
        report, cross = run_analysis(text, args.radius_override, args.trunc_extra, args.oracle)
        if args.format == "json":
            body = json.dumps(report_json(report, text, args.digits, cross), indent=2, sort_keys=False) + "\n"
        else:
            body = report_text(report, text, args.digits, cross)
        if args.plot:
            with open(args.plot, "w", encoding="utf-8") as fh:
                fh.write(render_svg(report, args.levels))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)
        return 0
    except PolySyntaxError as e:
        _diagnose("PolySyntaxError", e.msg, 1, e.offset)
        return 1
    except InputError as e:
        _diagnose(type(e).__name__, str(e), 1, None)
        return 1
    except AnalysisError as e:
        _diagnose(type(e).__name__, str(e), 2, None)
        return 2
    except BifsetError as e:
        _diagnose(type(e).__name__, str(e), 2, None)
        return 2
    except OSError as e:
        _diagnose("OSError", str(e), 1, None)
        return 1


if __name__ == "__main__":
    sys.exit(main())
