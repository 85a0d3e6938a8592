"""Critical values of the parameter c for fixed (a, b, d)."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

from . import polyroot
from .model import Params
from .polyroot import NumericFailure, Poly

FOLD_MIN_WIDTH = 1e-9


@dataclass(frozen=True)
class Fold:
    c_m: float
    c_M: float
    t_m: float
    t_M: float


@dataclass(frozen=True)
class Thresholds:
    c_minus: float
    c_star: float
    c1_star: float
    c_b: float
    fold: Fold | None
    fold_degenerate: bool = False


def q_poly(a: float, b: float, d: float) -> Poly:
    """Q(x) = 4a x^3 - b^2 x^2 - 18abd x + 27a^2 d^2 + 4 d b^3."""
    return Poly([27 * a * a * d * d + 4 * d * b**3, -18 * a * b * d, -(b * b), 4 * a])


@lru_cache(maxsize=4096)
def c_minus(a: float, b: float, d: float) -> float:
    """The unique negative zero of Q."""
    roots = polyroot.isolate_real_roots(q_poly(a, b, d), -math.inf, 0.0)
    if len(roots) != 1 or roots[0].multiplicity != 1:
        raise NumericFailure(f"Q({a}, {b}, {d}) has {len(roots)} negative roots, expected 1")
    return roots[0].value


def c_star(b: float, d: float) -> float:
    return -math.sqrt(3.0 * b * d)


def c1_star(b: float, d: float) -> float:
    return -2.0 * math.sqrt(b * d)


def h_poly(a: float, b: float) -> Poly:
    """H(x) = 108 x^2 + (108ab + 27a^3) x - 9a^2 b^2 - 32 b^3."""
    return Poly([-9 * a * a * b * b - 32 * b**3, 108 * a * b + 27 * a**3, 108.0])


def c_b(a: float, b: float) -> float:
    """Negative root of H, where P' first touches zero as c grows."""
    B = 108 * a * b + 27 * a**3
    C = -9 * a * a * b * b - 32 * b**3
    # B > 0, so the minus branch has no cancellation
    return (-B - math.sqrt(B * B - 4 * 108.0 * C)) / (2 * 108.0)


def t_star(a: float, b: float) -> float:
    return -(6 * c_b(a, b) + a * b) / (3 * a * a + 8 * b)


def x_star(params: Params) -> float:
    """Tangency point of the numerator; meaningful when c = c_minus.

    Raises ``ZeroDivisionError`` when the denominator ``6ac - 2b^2`` vanishes.
    """
    a, b, c, d = params.astuple()
    den = 6 * a * c - 2 * b * b
    if den == 0.0:
        raise ZeroDivisionError("x* undefined: 6ac - 2b^2 = 0")
    return (b * c - 9 * a * d) / den


def r_poly(a: float, b: float, d: float) -> Poly:
    """3t^4 - 2a t^3 - b t^2 + d, i.e. P with c eliminated via P'(t) = 0."""
    return Poly([d, 0.0, -b, -2 * a, 3.0])


def c_of_tangency(a: float, b: float, t: float) -> float:
    """The c for which P'(t) = 0."""
    return ((4 * t - 3 * a) * t - 2 * b) * t


def fold_exists(a: float, b: float, d: float) -> bool:
    return c_b(a, b) < (b * b - 12 * d) / (3 * a)


def fold_cs(a: float, b: float, d: float) -> Fold | None:
    """Values c_m < c_M at which P is tangent to zero, or ``None``.

    A fold narrower than ``FOLD_MIN_WIDTH`` is reported as absent with a warning.
    """
    if not fold_exists(a, b, d):
        return None
    roots = polyroot.isolate_real_roots(r_poly(a, b, d), 0.0, math.inf)
    if len(roots) == 1 and roots[0].multiplicity == 2:
        warnings.warn("fold collapsed to a single tangency", RuntimeWarning, stacklevel=2)
        return None
    if len(roots) != 2:
        raise NumericFailure(f"expected two positive tangency points, found {len(roots)}")
    t_M, t_m = roots[0].value, roots[1].value
    fold = Fold(c_m=c_of_tangency(a, b, t_m), c_M=c_of_tangency(a, b, t_M), t_m=t_m, t_M=t_M)
    if fold.c_M - fold.c_m < FOLD_MIN_WIDTH:
        warnings.warn(
            f"fold width {fold.c_M - fold.c_m:.3g} below resolution; treated as absent",
            RuntimeWarning,
            stacklevel=2,
        )
        return None
    return fold


def compute_thresholds(a: float, b: float, d: float) -> Thresholds:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fold = fold_cs(a, b, d)
    degenerate = fold is None and bool(caught)
    return Thresholds(
        c_minus=c_minus(a, b, d),
        c_star=c_star(b, d),
        c1_star=c1_star(b, d),
        c_b=c_b(a, b),
        fold=fold,
        fold_degenerate=degenerate,
    )
