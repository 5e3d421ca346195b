"""Polynomials shared by the property and acceptance tests.

Twelve hand-picked cases (the two worked examples run at their published
radii) plus fourteen random ones drawn from a fixed seed.
"""

import functools
import random

from bifset.cli import parse_input
from bifset.pipeline import analyze
from bifset.poly import random_poly

EX81 = "x^2*y^3*(y^2-25)^2 + 2*x*y*(y^2-25)*(y+25) - (y^4+y^3-50*y^2-51*y+575)"
EX82 = "2x^2y^3 - 9xy^2 + 12y"
BROUGHTON = "x + x^2*y"

NAMED = [
    ("x", "x", None),
    ("broughton", BROUGHTON, None),
    ("ex82", EX82, 3),
    ("ex81", EX81, 10),
    ("x2y2_plus_x", "x^2*y^2 + x", None),
    ("xy", "x*y", None),
    ("circle_jacobian", "x^3 + x*y^2 - 4x + 5", None),
    ("broughton_shifted", "x + x^2*y + 3", None),
    ("broughton_swapped", "y + x*y^2", None),
    ("offset_circle", "x^2 + y^2 + x", None),
    ("monkey_saddle", "x^3 - 3x*y^2 + y", None),
    ("vanishing_pair", "(x*y - 1)^2 + x^2", None),
]

RANDOM_SEED = 2024
RANDOM_COUNT = 14


def random_cases():
    rng = random.Random(RANDOM_SEED)
    out = []
    for k in range(RANDOM_COUNT):
        f = random_poly(rng, rng.choice([3, 4]), density=0.45, coeff_range=3)
        out.append((f"random{k:02d}", f, None))
    return out


def cases():
    """(name, polynomial, radius override) for the whole corpus."""
    return [(n, parse_input(t), R) for n, t, R in NAMED] + random_cases()


@functools.lru_cache(maxsize=None)
def analysed(text: str, R=None):
    return analyze(parse_input(text), R)


@functools.lru_cache(maxsize=None)
def reports():
    return [(n, f, R, analyze(f, R)) for n, f, R in cases()]
