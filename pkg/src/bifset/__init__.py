"""Certified bifurcation sets of real polynomials f(x, y) with rational coefficients.

Typical use::

    from bifset import parse_input, analyze
    report = analyze(parse_input("x + x^2*y"))
    report.atypical_values        # [0]
"""

from .arcs import MilnorArc, Monotonicity, RhoType
from .cli import parse_input, render_svg, report_json, report_text
from .clusters import BifurcationReport, MuCluster, Parity, Phenomenon
from .errors import AnalysisError, BifsetError, InputError
from .pipeline import analyze
from .poly import BiPoly, format_poly
from .puiseux import InfinityPoint, LimitKind, LimitValue
from .realroots import AlgebraicReal

__version__ = "0.1.0"

__all__ = [
    "AlgebraicReal", "AnalysisError", "BiPoly", "BifsetError", "BifurcationReport", "InfinityPoint",
    "InputError", "LimitKind", "LimitValue", "MilnorArc", "Monotonicity", "MuCluster", "Parity",
    "Phenomenon", "RhoType", "analyze", "format_poly", "parse_input", "render_svg", "report_json",
    "report_text",
]
