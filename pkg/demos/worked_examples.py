"""Run the two worked examples at their published radii and cross-check numerically.

    python3 demos/worked_examples.py [--plot DIR]
"""

import argparse
import os
import time

from bifset.cli import parse_input, render_svg, report_text
from bifset.oracle import cross_check
from bifset.pipeline import analyze

EXAMPLES = [
    ("first", "x^2*y^3*(y^2-25)^2 + 2*x*y*(y^2-25)*(y+25) - (y^4+y^3-50*y^2-51*y+575)", 10),
    ("second", "2x^2y^3 - 9xy^2 + 12y", 3),
]

ap = argparse.ArgumentParser()
ap.add_argument("--plot", metavar="DIR")
args = ap.parse_args()

for name, text, R in EXAMPLES:
    t0 = time.time()
    report = analyze(parse_input(text), R)
    t1 = time.time()
    cross = cross_check(report)
    print(f"== {name} example (analysis {t1 - t0:.1f} s, oracle {time.time() - t1:.1f} s)")
    print(report_text(report, text, cross=cross))
    if args.plot:
        os.makedirs(args.plot, exist_ok=True)
        path = os.path.join(args.plot, f"{name}.svg")
        with open(path, "w") as fh:
            fh.write(render_svg(report, levels=(-0.5, 0.5)))
        print("wrote", path)
