"""Parameter thresholds in c for fixed (a, b, d), and what they do to the equilibria.

Below c_minus the numerator can go negative and orbits may leave (0, inf).
Between the fold endpoints c_m and c_M there are three equilibria.
"""

from ratmap import Params, compute_thresholds, equilibria

a, b, d = 1.0, 2.0, 1.0
th = compute_thresholds(a, b, d)
print(f"(a, b, d) = {(a, b, d)}")
print(f"  c_minus = {th.c_minus:.6f}")
print(f"  c1_star = {th.c1_star:.6f}")
print(f"  c_star  = {th.c_star:.6f}")
print(f"  c_b     = {th.c_b:.6f}")
if th.fold:
    print(f"  fold    = ({th.fold.c_m:.6f}, {th.fold.c_M:.6f})")

print("\nequilibrium count while c crosses the fold:")
lo, hi = th.fold.c_m, th.fold.c_M
for c in (lo - 0.05, lo + 0.25 * (hi - lo), 0.5 * (lo + hi), hi + 0.05, th.c_star + 1):
    eqs = equilibria(Params(a, b, c, d))
    desc = ", ".join(f"{e.value:.5f} ({e.stability})" for e in eqs)
    print(f"  c = {c:+.5f}: {len(eqs)} -> {desc}")

# The unit parameters have no fold at all.
print("\nfold for (1, 1, 1):", compute_thresholds(1, 1, 1).fold)
