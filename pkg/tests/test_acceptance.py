"""Acceptance criteria, one test each, at the stated tolerances.

Every test prints a single ``criterion N: PASS|FAIL  detail`` line (visible
even under output capture). Run alone with::

    pytest tests/test_acceptance.py -v
    python tests/test_acceptance.py
"""

import math
import sys
import time

import numpy as np
import pytest

from ratmap import clear_caches
from ratmap.dynamics import classify, cross_validate, first_nonpositive_steps
from ratmap.model import Params, extrema, phi2, phi_prime
from ratmap.polyroot import isolate_real_roots
from ratmap.structures import (
    cycle_multiplier_closed_form,
    equilibria,
    g1_g2,
    g_poly,
    invariant_interval,
    phi2_minus_identity_factored,
    two_cycles,
)
from ratmap.thresholds import c_minus, c_star, compute_thresholds, h_poly, q_poly

TOL = 5e-4
SEED = 20261016
REFERENCE_SETS = {
    "A1": (1, 1, 1, 1),
    "A2": (0.1, 2, 1, 0.1),
    "A3": (0.21, 2.1, -2.8, 1.3),
    "A4": (0.18, 2.1, -2.8, 1.3),
    "B1": (1, 5, -4, 1),
    "B2": (0.1, 5, -4, 1),
    "B3": (0.15, 4, -4, 1.1),
    "B4": (0.1, 4, -4, 1.1),
    "C1": (0.7, 2.2, -3, 1),
    "C2": (1, 1, -3.3, 3),
    "D1": (1, 2.4, -3.8, 1.4),
    "D2": (1, 2, -3, 1),
    "D3": (1, 1.9, -2.8, 0.9),
    "D4": (2, 0.5, -3, 1.5),
}


class Criterion:
    """Collects failures; reports one line."""

    def __init__(self, n):
        self.n = n
        self.failures = []
        self.notes = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    def note(self, text):
        self.notes.append(text)

    def line(self):
        status = "PASS" if not self.failures else "FAIL"
        detail = "; ".join(self.failures[:3] if self.failures else self.notes)
        return f"criterion {self.n}: {status}  {detail}"


def _emit(crit, capsys=None):
    text = crit.line()
    if capsys is not None:
        with capsys.disabled():
            print("\n" + text)
    else:
        print(text)
    return not crit.failures


def _cycles_match(crit, label, expected):
    got = two_cycles(Params(*REFERENCE_SETS[label]))
    if not crit.check(len(got) == len(expected), f"{label}: {len(got)} cycles, expected {len(expected)}"):
        return
    for cyc, (p, q) in zip(got, sorted(expected)):
        crit.check(abs(cyc.p - p) <= TOL and abs(cyc.q - q) <= TOL,
                   f"{label}: cycle ({cyc.p:.5f}, {cyc.q:.5f}) vs ({p}, {q})")


def criterion_1():
    crit = Criterion(1)
    clear_caches()
    start = time.perf_counter()
    _cycles_match(crit, "A2", [(0.1118, 169.4132)])
    _cycles_match(crit, "A3", [(0.2593, 41.2206), (0.3525, 13.3090)])
    _cycles_match(crit, "A4", [(0.2001, 102.9321), (0.4058, 7.8071), (0.7646, 1.0453)])
    _cycles_match(crit, "A1", [])
    ms = 1e3 * (time.perf_counter() - start)
    crit.check(ms < 100, f"runtime {ms:.1f} ms >= 100 ms")
    crit.note(f"4 sets reproduced in {ms:.1f} ms (cold caches)")
    return crit


def criterion_2():
    crit = Criterion(2)
    _cycles_match(crit, "B1", [])
    _cycles_match(crit, "B2", [(0.1111, 450.5876), (0.2019, 48.2751)])
    _cycles_match(crit, "B3", [])
    _cycles_match(crit, "B4", [(0.1068, 590.5885), (0.2378, 28.0116)])
    crit.note("4 sets reproduced")
    return crit


def criterion_3():
    crit = Criterion(3)
    _cycles_match(crit, "C1", [])
    _cycles_match(crit, "C2", [(1.1687, 1.3190)])
    for label in ("C1", "C2"):
        ii = invariant_interval(Params(*REFERENCE_SETS[label]))
        crit.check(ii.hypothesis_H, f"{label}: hypothesis (H) false")
        crit.check(ii.grid_excess == 0.0, f"{label}: grid excess {ii.grid_excess}")
    crit.note("cycles match and hypothesis (H) holds for both sets")
    return crit


def criterion_4():
    crit = Criterion(4)
    expected = {"D1": "T7a1", "D2": "T7a21", "D3": "T7a22", "D4": "T7b"}
    for label, regime in expected.items():
        p = Params(*REFERENCE_SETS[label])
        got = classify(p).label
        crit.check(got == regime, f"{label}: classified {got}, expected {regime}")
        n = len(equilibria(p))
        crit.check(n == 2, f"{label}: {n} equilibria")
    _cycles_match(crit, "D3", [(0.5573, 0.5937)])
    crit.note("T7a1, T7a21, T7a22, T7b with two equilibria each")
    return crit


def _random_valid(rng, n):
    out = []
    while len(out) < n:
        a, b, d = rng.uniform(0.05, 10, 3)
        lo = c_minus(a, b, d)
        c = lo + rng.uniform(1e-3, 1.0) * (10.0 - lo)
        out.append(Params(float(a), float(b), float(c), float(d)))
    return out


def _random_fold_regime(rng, n, need=None):
    out = []
    while len(out) < n:
        a, b, d = (float(v) for v in rng.uniform(0.05, 10, 3))
        lo, hi = c_minus(a, b, d), c_star(b, d)
        p = Params(a, b, lo + (hi - lo) * rng.uniform(0.001, 0.999), d)
        if need is None or need(p):
            out.append(p)
    return out


def criterion_5():
    crit = Criterion(5)
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for p in _random_valid(rng, 1000):
        t = float(np.exp(rng.uniform(math.log(1e-2), math.log(1e2))))
        lhs = phi2(p, t) - t
        rhs = phi2_minus_identity_factored(p, t)
        err = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
        worst = max(worst, err)
    crit.check(worst <= 1e-8, f"factorization rel err {worst:.2e}")

    def beyond_xm(p):
        x_M = extrema(p).x_M
        return any(e.value >= x_M for e in equilibria(p))

    worst_g = 0.0
    for p in _random_fold_regime(rng, 300, beyond_xm):
        g1, g2 = g1_g2(p)
        x_M = extrema(p).x_M
        lhs = g_poly(p)(x_M)
        rhs = p.a * g2 + x_M * g1
        worst_g = max(worst_g, abs(lhs - rhs) / abs(rhs))
    crit.check(worst_g <= 1e-8, f"G(x_M) identity rel err {worst_g:.2e}")

    worst_x = 0.0
    for p in _random_fold_regime(rng, 1000):
        ext = extrema(p)
        for x in (ext.x_m, ext.x_M):
            scale = p.b * x * x + 2 * abs(p.c) * x + 3 * p.d
            worst_x = max(worst_x, abs(p.b * x * x + 2 * p.c * x + 3 * p.d) / scale)
    crit.check(worst_x <= 1e-9, f"critical-point residual {worst_x:.2e}")
    crit.note(f"max rel errors: factorization {worst:.1e}, G(x_M) {worst_g:.1e}, x_m/x_M {worst_x:.1e}")
    return crit


def criterion_6():
    crit = Criterion(6)
    rng = np.random.default_rng(SEED + 6)
    start = time.perf_counter()
    folds = 0
    for _ in range(1000):
        a, b, d = (float(v) for v in rng.uniform(0.05, 10, 3))
        tag = f"({a:.4g},{b:.4g},{d:.4g})"
        q = q_poly(a, b, d)
        neg = isolate_real_roots(q, -math.inf, 0.0)
        crit.check(len(neg) == 1, f"{tag}: Q has {len(neg)} negative roots")
        th = compute_thresholds(a, b, d)
        crit.check(q(th.c_star) > 0 and q(th.c1_star) > 0, f"{tag}: Q(c*) or Q(c1*) not positive")
        crit.check(h_poly(a, b)(-a * b / 6) < 0, f"{tag}: H(-ab/6) >= 0")
        f = th.fold
        if f is None:
            continue
        folds += 1
        crit.check(th.c_b < f.c_m < f.c_M < th.c_star, f"{tag}: fold ordering")
        crit.check(th.c_minus < f.c_M, f"{tag}: c_minus >= c_M")
        h = 1e-3 * (f.c_M - f.c_m)
        counts = [len(equilibria(Params(a, b, c, d)))
                  for c in (f.c_m - h, f.c_m, 0.5 * (f.c_m + f.c_M), f.c_M, f.c_M + h)]
        crit.check(counts == [1, 2, 3, 2, 1], f"{tag}: counts across fold {counts}")
    secs = time.perf_counter() - start
    crit.check(secs < 30, f"runtime {secs:.1f} s >= 30 s")
    crit.note(f"1000 draws ({folds} with a fold) in {secs:.1f} s")
    return crit


def criterion_7():
    crit = Criterion(7)
    rng = np.random.default_rng(SEED + 7)
    grid = np.logspace(-3, 3, 1000)
    for p in _random_fold_regime(rng, 300):
        x_M = extrema(p).x_M
        crit.check(-p.c * x_M > 3 * p.d, f"{p}: -c x_M <= 3d")
        for e in equilibria(p):
            if e.value >= x_M:
                crit.check(-1 < e.multiplier <= 0, f"{p}: multiplier {e.multiplier} at t>=x_M")
    # sign inequalities: unique equilibrium, fold edges, three equilibria
    sets = [Params(*v) for v in REFERENCE_SETS.values()]
    for _ in range(100):
        a, b, d = (float(v) for v in rng.uniform(0.05, 10, 3))
        th = compute_thresholds(a, b, d)
        if th.fold:
            mid = 0.5 * (max(th.fold.c_m, th.c_minus) + th.fold.c_M)
            sets.append(Params(a, b, mid, d))
    checked = 0
    for p in sets:
        eqs = equilibria(p)
        vals = [e.value for e in eqs]
        for t in grid:
            if min(abs(t - v) for v in vals) <= 1e-6 * max(1.0, t):
                continue
            diff = p.a + (p.b + (p.c + p.d / t) / t) / t - t
            if len(eqs) == 1:
                ok = diff * (t - vals[0]) < 0
            elif len(eqs) == 2:
                (simple,) = [e.value for e in eqs if not e.tangent]
                ok = diff * (t - simple) < 0
            else:
                ok = diff * (t - vals[0]) * (t - vals[1]) * (t - vals[2]) < 0
            checked += 1
            if not crit.check(ok, f"{p}: sign inequality fails at t={t:.4g}"):
                break
    worst = 0.0
    for p in sets:
        for cyc in two_cycles(p):
            direct = phi_prime(p, cyc.p) * phi_prime(p, cyc.q)
            closed = cycle_multiplier_closed_form(p, cyc.p, cyc.q)
            worst = max(worst, abs(direct - closed) / abs(closed))
    crit.check(worst <= 1e-10, f"multiplier formula rel err {worst:.2e}")
    crit.note(f"{checked} sign checks over {len(sets)} sets; multiplier rel err {worst:.1e}")
    return crit


def criterion_8():
    crit = Criterion(8)
    clear_caches()
    xs = np.geomspace(1e-3, 1e3, 100)
    start = time.perf_counter()
    compared = 0
    for label, v in REFERENCE_SETS.items():
        cv = cross_validate(Params(*v), xs)
        compared += cv.compared
        crit.check(cv.agreement_rate == 1.0,
                   f"{label} ({cv.regime}): {len(cv.mismatches)} mismatches")
        crit.check(cv.count("unclassified") == 0, f"{label}: unclassified samples")
    secs = time.perf_counter() - start
    crit.check(secs < 60, f"runtime {secs:.1f} s >= 60 s")
    crit.note(f"14 sets, {compared} compared samples, 100% agreement in {secs:.1f} s")
    return crit


def criterion_9():
    crit = Criterion(9)
    rng = np.random.default_rng(SEED + 9)
    draws, steps = 10_000, 10_000
    params = _random_valid(rng, draws)
    rows = np.array([p.astuple() for p in params])
    x0 = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), draws))
    start = time.perf_counter()
    first = first_nonpositive_steps(rows, x0, steps)
    secs = time.perf_counter() - start
    if secs > 60:
        crit.note("runtime over 60 s; full sample still evaluated")
    bad = int(np.count_nonzero(first))
    crit.check(bad == 0, f"{bad} orbits left (0, inf)")
    crit.note(f"{draws} draws x {steps} steps, no nonpositive iterate ({secs:.1f} s)")
    return crit


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("fn", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(fn, capsys):
    crit = fn()
    assert _emit(crit, capsys), crit.line()


if __name__ == "__main__":
    results = [_emit(fn()) for fn in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
