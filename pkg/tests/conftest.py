import math

import numpy as np
import pytest

from ratmap import clear_caches

# the fourteen reference parameter sets, grouped by convergence family A-D
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


def bisect(f, lo, hi, iters=200):
    """Plain bisection, deliberately independent of ratmap.polyroot."""
    flo = f(lo)
    assert flo * f(hi) < 0, "oracle needs a sign change"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sign_change_roots(f, lo, hi, n=200_000):
    """Roots located by sign changes on a dense grid, refined by bisection."""
    xs = np.linspace(lo, hi, n)
    ys = np.array([f(x) for x in xs])
    out = []
    for i in np.nonzero(np.sign(ys[:-1]) * np.sign(ys[1:]) < 0)[0]:
        out.append(bisect(f, xs[i], xs[i + 1]))
    return out


def random_abd(rng, n, lo=0.05, hi=10.0):
    return [tuple(float(v) for v in rng.uniform(lo, hi, 3)) for _ in range(n)]


def rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


__all__ = ["REFERENCE_SETS", "bisect", "sign_change_roots", "random_abd", "rel", "math"]
