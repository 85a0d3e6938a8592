"""Real-root isolation with Sturm sequences.

Every structure in the package (equilibria, 2-cycles, thresholds) reduces to
real roots of a small polynomial, so this is where the numerics live.
"""

import math

from ratmap.polyroot import Poly, isolate_real_roots, poly_from_roots, sturm_count

# A cubic with three well separated roots.
p = poly_from_roots([-2.0, 0.5, 3.0])
print("p =", p)
print("roots in (-inf, inf):", isolate_real_roots(p, -math.inf, math.inf).values)
print("Sturm count on (0, 10):", sturm_count(p, 0.0, 10.0))

# Repeated roots are found once, with their multiplicity.
q = poly_from_roots([1.0, 1.0, 1.0, 0.0, 0.0])
for r in isolate_real_roots(q, -5, 5):
    print(f"root {r.value:+.12f}  multiplicity {r.multiplicity}")

# The interval is open: a root sitting on an endpoint is not reported.
print("roots of x(x-1) in (0, 1):", isolate_real_roots(poly_from_roots([0.0, 1.0]), 0.0, 1.0).values)

# No real roots at all.
print("roots of x^2 + 1:", isolate_real_roots(Poly([1.0, 0.0, 1.0]), -math.inf, math.inf).values)
