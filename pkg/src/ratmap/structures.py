"""Equilibria, 2-cycles, and the auxiliary quantities used to classify orbits."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

from . import polyroot
from .model import Params, extrema, numerator, phi, phi_prime
from .polyroot import NumericFailure, Poly
from .thresholds import c1_star, c_minus, c_star

# a G-root this close (relative) to an equilibrium is the fixed point itself
EQUILIBRIUM_SEPARATION = 1e-7
INVARIANCE_GRID = 64


class RegimeError(ValueError):
    """Parameters fall outside the regime an operation is defined for."""


@dataclass(frozen=True)
class Equilibrium:
    value: float
    multiplier: float
    tangent: bool
    stability: str  # attracting | repelling | neutral | semistable


@dataclass(frozen=True)
class TwoCycle:
    p: float
    q: float
    multiplier: float
    tangent: bool

    def as_tuple(self) -> tuple[float, float]:
        return (self.p, self.q)


@dataclass(frozen=True)
class InvariantInterval:
    lo: float
    hi: float
    hypothesis_H: bool
    # max distance of phi(grid) from [lo, hi]; None when (H) fails and no check ran
    grid_excess: float | None


def p_poly(params: Params) -> Poly:
    """P(t) = t^4 - a t^3 - b t^2 - c t - d, whose positive roots are the equilibria."""
    a, b, c, d = params.astuple()
    return Poly([-d, -c, -b, -a, 1.0])


def g_poly(params: Params) -> Poly:
    """The sextic whose positive roots are the prime period-two points."""
    a, b, c, d = params.astuple()
    return Poly([
        a * d * d,
        2 * a * c * d - d * d,
        a * c * c + 2 * a * b * d - 2 * c * d,
        2 * a * a * d + 2 * a * b * c - c * c - b * d,
        a * b * b - a * d - b * c + 2 * a * a * c,
        2 * a * a * b - a * c - d,
        a**3,
    ])


def _stability(multiplier: float, tangent: bool) -> str:
    if tangent:
        return "semistable"
    if abs(multiplier) < 1:
        return "attracting"
    if abs(multiplier) > 1:
        return "repelling"
    return "neutral"


@lru_cache(maxsize=4096)
def equilibria(params: Params) -> tuple[Equilibrium, ...]:
    """Positive fixed points in increasing order; tangent ones flagged."""
    roots = polyroot.isolate_real_roots(p_poly(params), 0.0, math.inf)
    if not 1 <= len(roots) <= 3:
        raise NumericFailure(f"found {len(roots)} positive equilibria for {params}")
    out = []
    for r in roots:
        m = phi_prime(params, r.value)
        tangent = r.multiplicity >= 2
        out.append(Equilibrium(r.value, m, tangent, _stability(m, tangent)))
    return tuple(out)


@lru_cache(maxsize=4096)
def two_cycles(params: Params) -> tuple[TwoCycle, ...]:
    """Prime period-two orbits ``(p, q)``, ``p < q``, ordered by increasing ``p``."""
    eq_values = [e.value for e in equilibria(params)]
    roots = [
        r
        for r in polyroot.isolate_real_roots(g_poly(params), 0.0, math.inf)
        if all(
            abs(r.value - v) > EQUILIBRIUM_SEPARATION * max(1.0, v) for v in eq_values
        )
    ]
    values = [r.value for r in roots]
    used = [False] * len(roots)
    cycles = []
    for i, r in enumerate(roots):
        if used[i]:
            continue
        image = phi(params, r.value)
        j = min(range(len(values)), key=lambda k: abs(values[k] - image), default=None)
        if j is None or j == i or abs(values[j] - image) > 1e-6 * max(1.0, image):
            raise NumericFailure(f"period-two point {r.value} has no partner near {image}")
        used[i] = used[j] = True
        p, q = sorted((r.value, values[j]))
        tangent = roots[i].multiplicity % 2 == 0
        cycles.append(TwoCycle(p, q, phi_prime(params, p) * phi_prime(params, q), tangent))
    cycles.sort(key=lambda cyc: cyc.p)
    if len(cycles) > 3:
        raise NumericFailure(f"found {len(cycles)} 2-cycles; at most three exist")
    return tuple(cycles)


def cycle_multiplier_closed_form(params: Params, p: float, q: float) -> float:
    b, c, d = params.b, params.c, params.d
    return (b * p * p + 2 * c * p + 3 * d) * (b * q * q + 2 * c * q + 3 * d) / (p**4 * q**4)


def _require_fold_regime(params: Params) -> None:
    if not c_minus(params.a, params.b, params.d) < params.c < c_star(params.b, params.d):
        raise RegimeError(f"c={params.c} is not in (c_minus, c*)")


def g1_g2(params: Params) -> tuple[float, float]:
    """The two auxiliary values at x_M; both positive when an equilibrium lies at or past x_M."""
    _require_fold_regime(params)
    ext = extrema(params)
    x = ext.x_M
    if not any(e.value >= x for e in equilibria(params)):
        raise RegimeError("no equilibrium at or beyond x_M")
    a, b, c, d = params.astuple()
    g1 = -d * x**4 + (a * d - b * c) * x**3 - (c * c + b * d) * x * x - 2 * c * d * x - d * d
    g2 = (
        a * a * x**6
        + (2 * a * b - c) * x**5
        + (b * b - 2 * d + 2 * a * c) * x**4
        + (2 * a * d + 2 * b * c) * x**3
        + (c * c + 2 * b * d) * x * x
        + 2 * c * d * x
        + d * d
    )
    return g1, g2


def eta(params: Params) -> float:
    """The point beyond x_M where phi returns to the value phi(x_m)."""
    _require_fold_regime(params)
    if not params.c > c1_star(params.b, params.d):
        raise RegimeError(f"c={params.c} does not exceed c1*; phi(x_m) <= a")
    x_m = extrema(params).x_m
    den = params.c * x_m + 2 * params.d
    if not den < 0:
        raise RegimeError(f"c x_m + 2d = {den} is not negative")
    return -params.d * x_m / den


def _unique_equilibrium_below_xm(params: Params) -> float:
    _require_fold_regime(params)
    eqs = equilibria(params)
    if len(eqs) != 1 or not eqs[0].value < extrema(params).x_m:
        raise RegimeError("need a unique equilibrium below x_m")
    return eqs[0].value


def invariant_interval(params: Params) -> InvariantInterval:
    """``[phi(x_m), phi^2(x_m)]`` together with hypothesis (H) and a grid spot check."""
    _unique_equilibrium_below_xm(params)
    x_m = extrema(params).x_m
    lo = phi(params, x_m)
    hi = phi(params, lo)
    if params.c <= c1_star(params.b, params.d):
        hyp = True
    else:
        hyp = hi <= eta(params)
    excess = None
    if hyp:
        excess = 0.0
        n = INVARIANCE_GRID
        for k in range(n):
            t = lo + (hi - lo) * k / (n - 1)
            y = phi(params, t)
            excess = max(excess, lo - y, y - hi)
    return InvariantInterval(lo, hi, hyp, excess)


def _branch_inverse(params: Params, target: float, lo: float, hi: float, decreasing: bool) -> float:
    """Bisection for ``phi(x) = target`` on a monotone branch ``[lo, hi]``."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        above = phi(params, mid) > target
        if above == decreasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def preimage_below_xm(params: Params, target: float) -> float:
    """The unique x in ``(0, x_m]`` with ``phi(x) = target`` (phi decreases there)."""
    _require_fold_regime(params)
    x_m = extrema(params).x_m
    floor = phi(params, x_m)
    if target < floor:
        raise RegimeError(f"target {target} below phi(x_m) = {floor}")
    if target == floor:
        return x_m
    lo = 0.5 * x_m
    while phi(params, lo) <= target:
        lo *= 0.5
    return _branch_inverse(params, target, lo, x_m, decreasing=True)


def preimages(params: Params, target: float) -> list[float]:
    """All x > 0 with ``phi(x) = target``, one bisection per monotone branch."""
    ext = extrema(params)
    out = []
    if ext is None:
        if target > params.a:
            lo, hi = 1.0, 1.0
            while phi(params, lo) <= target:
                lo *= 0.5
            while phi(params, hi) > target:
                hi *= 2.0
            out.append(_branch_inverse(params, target, lo, hi, decreasing=True))
        return out
    x_m, x_M = ext.x_m, ext.x_M
    f_m, f_M = phi(params, x_m), phi(params, x_M)
    if target >= f_m:
        out.append(preimage_below_xm(params, target))
    if f_m < target < f_M:
        out.append(_branch_inverse(params, target, x_m, x_M, decreasing=False))
    if params.a < target < f_M:
        hi = 2.0 * x_M
        while phi(params, hi) > target:
            hi *= 2.0
        out.append(_branch_inverse(params, target, x_M, hi, decreasing=True))
    return sorted(out)


def backward_orbit(params: Params, point: float, depth: int = 32, limit: int = 4096) -> list[float]:
    """Iterated preimages of ``point`` up to ``depth`` levels (``point`` included)."""
    found = [point]
    frontier = [point]
    for _ in range(depth):
        nxt = []
        for y in frontier:
            for x in preimages(params, y):
                if all(abs(x - z) > 1e-12 * max(1.0, z) for z in found):
                    nxt.append(x)
                    found.append(x)
        frontier = nxt
        if not frontier or len(found) >= limit:
            break
    return sorted(found)


def preimage_set_is_trivial(params: Params) -> bool:
    """Whether the backward orbit of the equilibrium is just the equilibrium."""
    t_bar = _unique_equilibrium_below_xm(params)
    x_M = extrema(params).x_M
    c, d = params.c, params.d
    bound = -d * x_M / (c * x_M + 2 * d)
    if abs(t_bar - bound) <= 1e-12 * max(1.0, bound):
        warnings.warn("equilibrium sits on the preimage boundary", RuntimeWarning, stacklevel=2)
        return False
    flag = t_bar < bound
    if flag != (phi(params, x_M) < t_bar):
        warnings.warn("preimage criteria disagree", RuntimeWarning, stacklevel=2)
    return flag


def phi2_minus_identity_factored(params: Params, t: float) -> float:
    """``t^3 / F(t)^3 * (phi(t) - t) * G(t)`` with F the numerator of phi."""
    f = numerator(params, t)
    return t**3 / f**3 * (phi(params, t) - t) * g_poly(params)(t)
