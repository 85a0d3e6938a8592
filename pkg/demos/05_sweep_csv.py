"""Sweep c across the thresholds and write one CSV row per value."""

import sys

from ratmap import compute_thresholds, sweep
from ratmap.report import write_sweep_csv

a, b, d = 1.0, 2.0, 1.0
th = compute_thresholds(a, b, d)
rows = sweep(a, b, d, (th.c_minus - 0.2, th.c_star + 1.0, 41))

# regime changes along the sweep
prev = None
for r in rows:
    if r.regime != prev:
        counts = "c <= c_minus" if r.n_equilibria is None else (
            f"{r.n_equilibria} equilibria, {r.n_cycles} 2-cycles")
        print(f"c = {r.c:+.4f}: {r.regime} ({counts})", file=sys.stderr)
        prev = r.regime

out = sys.argv[1] if len(sys.argv) > 1 else "sweep.csv"
with open(out, "w", newline="") as fh:
    write_sweep_csv(rows, fh)
print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)
