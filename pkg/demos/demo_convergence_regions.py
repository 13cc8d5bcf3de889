#!/usr/bin/env python3
"""Map where each method converges on J = theta^2/2, and who beats whom.

Every method reduces to theta_{t+1} + b*theta_t + c*theta_{t-1} = 0 here,
so convergence is just |roots| < 1.  NAG and MOM converge everywhere in
the open unit square; RUD only where 1 + mu > 1.5*alpha, but where it
converges with high momentum it is the fastest of the three.
"""

import numpy as np

from rudopt import Method, RegionPredicate, rasterize_region, rate_compare, stability

print("spectral radii at the canonical point alpha=0.2, mu=0.9:")
for method in (Method.RUD, Method.NAG, Method.MOM):
    res = stability(method, 0.2, 0.9)
    print(f"  {method.value:3s} radius {res.spectral_radius:.5f} "
          f"({'convergent' if res.convergent else 'divergent'})")
print("-> rud < nag < mom: fewer iterations per decade of loss for RUD")

print("\nRUD at a too-large learning rate (alpha=0.9, mu=0.2):")
res = stability(Method.RUD, 0.9, 0.2)
print(f"  radius {res.spectral_radius:.5f} -> divergent (1+mu = 1.2 < 1.35 = 1.5*alpha)")

print("\nwho is faster at a few points (A vs B by spectral radius):")
for a, b, alpha, mu in [(Method.RUD, Method.NAG, 0.2, 0.9),
                        (Method.MOM, Method.NAG, 0.2, 0.9),
                        (Method.MOM, Method.NAG, 0.1, 0.05)]:
    verdict = rate_compare(a, b, alpha, mu)
    print(f"  {a.value} vs {b.value} at (alpha={alpha}, mu={mu}): {verdict.value}")

print("\nASCII view of the four region panels (mu ->, alpha ^, # = shaded):")
for predicate in RegionPredicate:
    grid = rasterize_region(predicate, 33, 17)
    print(f"\n  {predicate.value}")
    for j in range(len(grid.alpha_axis) - 1, -1, -1):
        row = "".join("#" if grid.cells[i, j] else "." for i in range(len(grid.mu_axis)))
        print("   ", row)
print("\n(render these as real figures with the region CSVs + the render script;")
print(" see README for the full pipeline)")
