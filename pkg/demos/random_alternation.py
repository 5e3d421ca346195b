"""Analyse random polynomials and report arc counts, verdicts and alternation checks.

    python3 demos/random_alternation.py [COUNT] [SEED]
"""

import random
import sys
import time

from bifset.arcs import alternation_violations
from bifset.pipeline import analyze
from bifset.poly import random_poly

count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rng = random.Random(int(sys.argv[2]) if len(sys.argv) > 2 else 1)
for _ in range(count):
    f = random_poly(rng, rng.randint(1, 4))
    t0 = time.time()
    r = analyze(f)
    bif = ", ".join(str(v.rational) if v.is_rational else v.decimal(6)[0] for v in r.bifurcation_set)
    print(f"{time.time() - t0:5.1f}s  R={r.radius.R}  arcs={len(r.arcs):2d}  "
          f"alternation={'ok' if not alternation_violations(r.arcs) else 'VIOLATED'}  "
          f"B_f={{{bif}}}  f={f}")
