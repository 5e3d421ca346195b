"""Walk through the analysis of f = x + x^2 y, step by step.

    python3 demos/broughton.py
"""

from bifset.arcs import circle_arc_points, classify_arcs
from bifset.cli import parse_input
from bifset.clusters import verdict
from bifset.milnor import critical_values, milnor_curve, milnor_radius, mu_set, primitivity_info
from bifset.oracle import sweep_census
from bifset.poly import milnor_poly
from bifset.puiseux import all_branches, match_arcs

f = parse_input("x + x^2*y")
print("f =", f)
print("Jac(f, rho) =", milnor_poly(f))
h = milnor_curve(f)
print("reduced Milnor curve h =", h)
print("critical values:", critical_values(f) or "none")

mu = mu_set(f)
print("mu points:", [p.approx() for p in mu.isolated_points])
R = milnor_radius(f, mu=mu).R
print("radius:", R)

samples = circle_arc_points(h, R)
arcs = classify_arcs(f, samples, R)
pts, branches = all_branches(h, f)
print("points at infinity:", ", ".join(p.projective() for p in pts))
pairing = match_arcs(samples, branches, h, R)
for a in arcs:
    a.branch = pairing[a.index]
    a.limit = a.branch.limit
    x, y = a.sample.approx()
    print(f"  arc {a.index}: ({x:+.4f}, {y:+.4f}) {a.monotonicity}, {a.rho_type}, "
          f"branch at {a.branch.at.projective()} side {a.branch.side:+d}, limit {a.limit}")

report = verdict(primitivity_info(f), milnor_radius(f, mu=mu), arcs, critical_values(f))
for c in report.clusters:
    print(f"  cluster {c.arc_indices}: limit {c.value}, {c.direction}, {c.parity}, {c.phenomenon}")
print("atypical values:", [(str(v.rational), sorted(map(str, p))) for v, p in report.atypical_regular_values])

print("fibre counts in the disk of radius 8 as t -> 0 from below:")
print("  ", sweep_census(f, 0, -1, steps=10).counts)
