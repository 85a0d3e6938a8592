"""Real-root isolation and refinement for low-degree real polynomials.

Polynomials are stored densely in ascending order: ``coeffs[k]`` multiplies
``x**k``. Counting uses Sturm sequences on the squarefree part, refinement is
a bisection/Newton hybrid, and multiplicities come from the floating-point
gcd of ``p`` and ``p'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_DEGREE = 6
TOL_ROOT = 1e-12
GCD_CUTOFF = 1e-10

_EPS = 2.220446049250313e-16


class NumericFailure(RuntimeError):
    """A computation produced a result the mathematics rules out."""


@dataclass(frozen=True)
class Poly:
    """Dense real polynomial, ascending coefficients, trailing zeros trimmed."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable[float]):
        cs = [float(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0.0:
            cs.pop()
        if not cs:
            cs = [0.0]
        if len(cs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(cs) - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    @property
    def lead(self) -> float:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def __call__(self, x: float) -> float:
        return eval(self, x)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"


@dataclass(frozen=True)
class Root:
    value: float
    multiplicity: int
    residual_bound: float


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Root, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    @property
    def values(self) -> list[float]:
        return [r.value for r in self.roots]


def eval(p: Poly, x: float) -> float:  # noqa: A001 - mirrors the operation name
    """Horner evaluation; overflow propagates as infinity."""
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def eval_error_bound(p: Poly, x: float) -> float:
    """A priori rounding-error bound for Horner evaluation at ``x``."""
    ax = abs(x)
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * ax + abs(c)
    return 2.0 * (len(p.coeffs) + 1) * _EPS * acc


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a: float) -> tuple[float, float]:
    c = 134217729.0 * a  # 2**27 + 1
    h = c - (c - a)
    return h, a - h


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def eval_compensated(p: Poly, x: float) -> float:
    """Compensated Horner: as accurate as Horner run in twice the working precision.

    Falls back to plain Horner when the error-free transforms would overflow.
    """
    cs = p.coeffs
    s = cs[-1]
    err = 0.0
    for c in reversed(cs[:-1]):
        prod, e1 = _two_prod(s, x)
        s, e2 = _two_sum(prod, c)
        err = err * x + (e1 + e2)
    out = s + err
    if not math.isfinite(out) or not math.isfinite(err):
        return eval(p, x)
    return out


def derivative(p: Poly) -> Poly:
    if len(p.coeffs) == 1:
        return Poly([0.0])
    return Poly([k * c for k, c in enumerate(p.coeffs)][1:])


def _normalized(p: Poly) -> Poly:
    # positive scaling only, so Sturm signs are preserved
    s = p.scale()
    if s == 0.0:
        return p
    return Poly([c / s for c in p.coeffs])


def divmod_poly(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Long division ``num = q*den + r`` with ``deg r < deg den``."""
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(num.coeffs)
    dd = den.degree
    if num.degree < dd:
        return Poly([0.0]), num
    q = [0.0] * (num.degree - dd + 1)
    for k in range(num.degree - dd, -1, -1):
        f = r[k + dd] / den.lead
        q[k] = f
        for j, c in enumerate(den.coeffs):
            r[k + j] -= f * c
        r[k + dd] = 0.0
    return Poly(q), Poly(r[:dd] if dd > 0 else [0.0])


def _chop(r: Poly, ref_scale: float, cutoff: float) -> Poly:
    """Drop a remainder whose coefficients are all below ``cutoff * ref_scale``."""
    if r.scale() <= cutoff * ref_scale:
        return Poly([0.0])
    return r


def gcd(p: Poly, q: Poly, cutoff: float = GCD_CUTOFF) -> Poly:
    """Euclidean gcd in floating point, normalized to unit max coefficient.

    A remainder counts as zero when every coefficient is at most
    ``cutoff`` times the max coefficient of the dividend that produced it.
    """
    a, b = _normalized(p), _normalized(q)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = divmod_poly(a, b)
        r = _chop(r, a.scale(), cutoff)
        a, b = b, _normalized(r)
    return a


def squarefree_part(p: Poly, cutoff: float = GCD_CUTOFF) -> tuple[Poly, bool]:
    """Return ``(p / gcd(p, p'), had_repeats)``."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree <= 1:
        return _normalized(p), False
    g = gcd(p, derivative(p), cutoff)
    if g.degree < 1:
        return _normalized(p), False
    sf, _ = divmod_poly(_normalized(p), g)
    return _normalized(sf), True


def sturm_sequence(p: Poly, cutoff: float = GCD_CUTOFF) -> list[Poly]:
    seq = [_normalized(p)]
    if p.degree < 1:
        return seq
    seq.append(_normalized(derivative(p)))
    while seq[-1].degree > 0:
        _, r = divmod_poly(seq[-2], seq[-1])
        r = _chop(r, seq[-2].scale(), cutoff)
        if r.is_zero():
            break
        seq.append(_normalized(Poly([-c for c in r.coeffs])))
    return seq


def _sign_variations(seq: Sequence[Poly], x: float) -> int:
    count = 0
    prev = 0.0
    for s in seq:
        v = eval_compensated(s, x)
        if v == 0.0:
            continue
        if prev != 0.0 and (v > 0.0) != (prev > 0.0):
            count += 1
        prev = v
    return count


def _sign_variations_at_inf(seq: Sequence[Poly], positive: bool) -> int:
    count = 0
    prev = 0.0
    for s in seq:
        v = s.lead if (positive or s.degree % 2 == 0) else -s.lead
        if prev != 0.0 and (v > 0.0) != (prev > 0.0):
            count += 1
        prev = v
    return count


def sturm_count(p: Poly, lo: float, hi: float) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    seq = sturm_sequence(p)
    vlo = _sign_variations_at_inf(seq, False) if lo == -math.inf else _sign_variations(seq, lo)
    vhi = _sign_variations_at_inf(seq, True) if hi == math.inf else _sign_variations(seq, hi)
    return vlo - vhi


def cauchy_bound(p: Poly) -> float:
    """All real roots lie in ``[-B, B]`` with ``B = 1 + max |c_i / c_lead|``."""
    if p.degree < 1:
        return 1.0
    return 1.0 + max(abs(c / p.lead) for c in p.coeffs[:-1])


def refine_root(p: Poly, bracket: tuple[float, float], tol: float = TOL_ROOT) -> float:
    """Shrink a sign-change bracket of ``p`` to width ``tol`` and return its midpoint.

    Newton steps are taken from the endpoint with the smaller residual; a step
    that leaves the bracket, or fails to halve it, is replaced by bisection.
    """
    a, b = float(bracket[0]), float(bracket[1])
    if a > b:
        a, b = b, a
    fa, fb = eval_compensated(p, a), eval_compensated(p, b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"no sign change on [{a}, {b}]")
    dp = derivative(p)
    for _ in range(400):
        width = b - a
        tol_eff = max(tol, 4.0 * _EPS * max(abs(a), abs(b)))
        if width <= tol_eff:
            break
        x0 = a if abs(fa) < abs(fb) else b
        d = eval_compensated(dp, x0)
        x = x0 - eval_compensated(p, x0) / d if d != 0.0 else math.nan
        if not (a < x < b):
            x = 0.5 * (a + b)
        else:
            # nudge off the Newton limit point so the far side of the bracket moves too
            step = 0.5 * tol_eff
            x = x + step if x0 == a else x - step
            x = min(max(x, a + 0.25 * tol_eff), b - 0.25 * tol_eff)
        fx = eval_compensated(p, x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        if b - a > 0.5 * width:
            m = 0.5 * (a + b)
            fm = eval_compensated(p, m)
            if fm == 0.0:
                return m
            if (fm > 0.0) == (fa > 0.0):
                a, fa = m, fm
            else:
                b, fb = m, fm
    return 0.5 * (a + b)


# splitting points and open endpoints are kept this many Horner error bounds
# away from a root of sf, whose coefficients carry gcd noise
_SIGN_MARGIN = 1e3


def _isolate_simple(sf: Poly, lo: float, hi: float, tol: float) -> list[tuple[float, float]]:
    """Disjoint brackets, one per root of the squarefree ``sf`` in ``(lo, hi)``."""
    seq = sturm_sequence(sf)
    out: list[tuple[float, float]] = []

    def variations(x: float) -> int:
        return _sign_variations(seq, x)

    def clearance(x: float) -> float:
        v = abs(eval_compensated(sf, x))
        if v == 0.0:
            return 0.0
        bound = eval_error_bound(sf, x)
        return v / bound if bound > 0.0 else math.inf

    # the interval is open: step the endpoints inward until the Sturm signs
    # there can be trusted
    def nudge(x: float, direction: float) -> float:
        step = max(tol, 8.0 * _EPS * abs(x))
        limit = 1e-8 * max(1.0, abs(x))
        moved = 0.0
        while clearance(x) <= _SIGN_MARGIN and moved < limit:
            x += direction * step
            moved += step
            step *= 2.0
        return x

    lo, hi = nudge(lo, 1.0), nudge(hi, -1.0)
    if not lo < hi:
        return out

    stack = [(lo, hi, variations(lo), variations(hi))]
    while stack:
        l, r, vl, vr = stack.pop()
        n = vl - vr
        if n <= 0:
            continue
        if n == 1:
            out.append((l, r))
            continue
        if r - l <= max(tol, 4.0 * _EPS * max(abs(l), abs(r))):
            # a cluster below resolution; report it once
            out.append((l, r))
            continue
        # split away from roots; fall back to the best-separated candidate
        best_m, best_c = 0.5 * (l + r), -1.0
        for frac in (0.5, 0.4375, 0.5625, 0.375, 0.625, 0.3125, 0.6875):
            m = l + frac * (r - l)
            c = clearance(m)
            if c > _SIGN_MARGIN:
                best_m = m
                break
            if c > best_c:
                best_m, best_c = m, c
        m = best_m
        vm = variations(m)
        stack.append((m, r, vm, vr))
        stack.append((l, m, vl, vm))
    out.sort()
    return out


def _bracket_root(p: Poly, sf: Poly, br: tuple[float, float], tol: float) -> float:
    l, r = br
    if l == r:
        return l
    # p is better conditioned, but only a strict sign change of p is trusted:
    # an exact zero of p at a shared bracket endpoint may belong to the neighbour
    fl, fr = eval_compensated(p, l), eval_compensated(p, r)
    if fl != 0.0 and fr != 0.0 and (fl > 0.0) != (fr > 0.0):
        return refine_root(p, (l, r), tol)
    # Sturm guarantees sf has exactly one root in (l, r]
    gl, gr = eval_compensated(sf, l), eval_compensated(sf, r)
    if gr == 0.0:
        return r
    if gl != 0.0 and (gl > 0.0) != (gr > 0.0):
        return refine_root(sf, (l, r), tol)
    # no sign change even on sf: evaluation noise dominates, take the midpoint
    return 0.5 * (l + r)


def _multiplicities(p: Poly, values: list[float], cutoff: float) -> list[int]:
    mult = [1] * len(values)
    if not values:
        return mult
    g = gcd(p, derivative(p), cutoff)
    if g.degree < 1:
        return mult
    for extra in isolate_real_roots(g, -math.inf, math.inf, cutoff=cutoff):
        i = min(range(len(values)), key=lambda k: abs(values[k] - extra.value))
        if abs(values[i] - extra.value) <= 1e-4 * max(1.0, abs(values[i])):
            mult[i] += extra.multiplicity
    return mult


def isolate_real_roots(
    p: Poly,
    lo: float,
    hi: float,
    tol: float = TOL_ROOT,
    cutoff: float = GCD_CUTOFF,
) -> RootSet:
    """All real roots of ``p`` in the open interval ``(lo, hi)``.

    Infinite endpoints are replaced by the Cauchy bound. Each root carries
    its multiplicity and a bound on ``|p(root)|``.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if p.degree < 1:
        return RootSet(())
    bound = cauchy_bound(p)
    lo_f = max(lo, -bound - 1.0)
    hi_f = min(hi, bound + 1.0)
    if lo_f >= hi_f:
        return RootSet(())
    sf, _ = squarefree_part(p, cutoff)
    brackets = _isolate_simple(sf, lo_f, hi_f, tol)
    values, kept = [], []
    for br in brackets:
        x = _bracket_root(p, sf, br, tol)
        if lo < x < hi and (not values or x > values[-1]):
            values.append(x)
            kept.append(br)
    mults = _multiplicities(p, values, cutoff) if p.degree >= 2 else [1] * len(values)
    for i, m in enumerate(mults):
        # p is flat at a repeated root; its simple-root companion sf locates it better
        if m > 1:
            values[i] = _bracket_root(sf, sf, kept[i], tol)
    roots = tuple(
        Root(x, m, abs(eval(p, x)) + eval_error_bound(p, x)) for x, m in zip(values, mults)
    )
    return RootSet(roots)


def poly_from_roots(roots: Iterable[float], lead: float = 1.0) -> Poly:
    cs = [float(lead)]
    for r in roots:
        nxt = [0.0] * (len(cs) + 1)
        for k, c in enumerate(cs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        cs = nxt
    return Poly(cs)
