"""Orbit fates: simulate, predict from the regime, and scan basins of attraction."""

import numpy as np

from ratmap import Params, basin_scan, cross_validate, iterate_orbit, predict_fate, two_cycles

# T4b: every orbit goes to the single attracting 2-cycle.
p = Params(0.1, 2, 1, 0.1)
res = iterate_orbit(p, 1.0, trace_limit=8)
print("first iterates:", [f"{x:.4g}" for x in res.trace])
print("fate:", res.fate, "after", res.iterations, "steps")
print("prediction:", predict_fate(p, 1.0).predicted)

# T4c: a repelling 2-cycle separates the equilibrium's basin from the outer cycle's.
p = Params(0.21, 2.1, -2.8, 1.3)
print("\n2-cycles:", [(round(c.p, 5), round(c.q, 5)) for c in two_cycles(p)])
scan = basin_scan(p, (1e-3, 1e3, 400))
for lo, hi, key in scan.bands():
    print(f"  x0 in [{lo:.4g}, {hi:.4g}] -> {key}")

cv = cross_validate(p, np.geomspace(1e-3, 1e3, 200))
print(f"predicted vs simulated: {cv.compared} compared, agreement {cv.agreement_rate:.1%}")
