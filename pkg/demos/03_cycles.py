"""Equilibria, 2-cycles and regime labels for the bundled reference parameter sets."""

from ratmap import Params, classify, equilibria, two_cycles
from ratmap.golden import CASES, verify

for case in CASES:
    p = Params(*case.params)
    eqs = equilibria(p)
    cyc = two_cycles(p)
    print(f"{case.label}  {case.params}  regime {classify(p).label}")
    for e in eqs:
        print(f"    equilibrium {e.value:.6f}  multiplier {e.multiplier:+.4f}  {e.stability}")
    for c in cyc:
        print(f"    2-cycle     ({c.p:.4f}, {c.q:.4f})  multiplier {c.multiplier:+.4f}")

results = verify()
print(f"\nreference checks: {sum(r.passed for r in results)}/{len(results)} pass")
