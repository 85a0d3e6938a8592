"""Orbit simulation, analytic fate prediction, and the comparison between the two."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .model import Params, extrema, phi
from .structures import (
    Equilibrium,
    RegimeError,
    TwoCycle,
    backward_orbit,
    equilibria,
    preimage_below_xm,
    preimage_set_is_trivial,
    two_cycles,
)
from .thresholds import c_star

TOL_CONV = 1e-10
DEFAULT_MAX_ITER = 10**6
CYCLE_RATIO = 1e-6
BOUNDARY_MARGIN = 1e-4
PREIMAGE_DEPTH = 32
# t_bar <= a checks in the two-equilibria case; tangent equilibria are only sqrt(eps)-accurate
TANGENT_SLACK = 1e-6


def default_max_iter() -> int:
    env = os.environ.get("RATMAP_MAX_ITER")
    return int(env) if env else DEFAULT_MAX_ITER


# ---- fates -------------------------------------------------------------------


@dataclass(frozen=True)
class FixedPoint:
    value: float
    kind = "fixed_point"


@dataclass(frozen=True)
class Cycle:
    p: float
    q: float
    kind = "two_cycle"


@dataclass(frozen=True)
class NonpositiveIterate:
    step: int
    kind = "nonpositive_iterate"


@dataclass(frozen=True)
class Undecided:
    reason: str = "iteration budget exhausted"
    kind = "undecided"


Fate = Union[FixedPoint, Cycle, NonpositiveIterate, Undecided]


def describe(fate: Fate) -> str:
    if isinstance(fate, FixedPoint):
        return f"FixedPoint({fate.value:.6g})"
    if isinstance(fate, Cycle):
        return f"TwoCycle({fate.p:.6g}, {fate.q:.6g})"
    if isinstance(fate, NonpositiveIterate):
        return f"NonpositiveIterate(step={fate.step})"
    return f"Undecided({fate.reason})"


@dataclass(frozen=True)
class OrbitResult:
    fate: Fate
    iterations: int
    final_points: tuple[float, float]
    trace: tuple[float, ...] | None = None


def iterate_orbit(
    params: Params,
    x0: float,
    max_iter: int | None = None,
    tol_conv: float = TOL_CONV,
    trace_limit: int = 0,
) -> OrbitResult:
    """Iterate phi from ``x0`` until the orbit settles on a fixed point or a 2-cycle.

    A fixed point is declared when successive iterates differ by at most
    ``tol_conv``; a 2-cycle when ``|x_{n+2} - x_n| <= tol_conv`` while
    ``|x_{n+1} - x_n| > 10 tol_conv`` and the two-step gap is negligible
    next to the one-step gap (``CYCLE_RATIO``). The first ``trace_limit`` iterates
    (``x0`` included) are kept.
    """
    if not x0 > 0:
        raise ValueError(f"x0 must be positive, got {x0}")
    if max_iter is None:
        max_iter = default_max_iter()
    a, b, c, d = params.astuple()
    trace = [x0] if trace_limit > 0 else None
    prev, x = x0, x0
    n = 0
    while n < max_iter:
        nxt = a + (b + (c + d / x) / x) / x
        n += 1
        if trace is not None and len(trace) < trace_limit:
            trace.append(nxt)
        if not math.isfinite(nxt):
            return OrbitResult(Undecided(f"nonfinite iterate at step {n}"), n, (x, nxt), _tup(trace))
        if nxt <= 0:
            return OrbitResult(NonpositiveIterate(n), n, (x, nxt), _tup(trace))
        gap = abs(nxt - x)
        if gap <= tol_conv:
            return OrbitResult(FixedPoint(nxt), n, (x, nxt), _tup(trace))
        two_gap = abs(nxt - prev)
        # approaching a fixed point with multiplier m gives two_gap/gap = |1 + m|, not ~0
        if n >= 2 and two_gap <= tol_conv and gap > 10 * tol_conv and two_gap <= CYCLE_RATIO * gap:
            p, q = (x, nxt) if x < nxt else (nxt, x)
            return OrbitResult(Cycle(p, q), n, (x, nxt), _tup(trace))
        prev, x = x, nxt
    return OrbitResult(Undecided(), n, (prev, x), _tup(trace))


def first_nonpositive_steps(params_rows, x0s, steps: int) -> np.ndarray:
    """Iterate many orbits side by side; entry k is the first step at which orbit k
    left (0, inf), or 0 if it stayed positive for ``steps`` steps.

    ``params_rows`` is an ``(n, 4)`` array of (a, b, c, d). Evaluation order
    matches :func:`iterate_orbit`, so each orbit is bit-identical to the scalar one.
    """
    pr = np.asarray(params_rows, dtype=float)
    a, b, c, d = pr[:, 0], pr[:, 1], pr[:, 2], pr[:, 3]
    x = np.array(x0s, dtype=float)
    first = np.zeros(len(x), dtype=np.int64)
    alive = np.ones(len(x), dtype=bool)
    with np.errstate(all="ignore"):
        for n in range(1, steps + 1):
            x = a + (b + (c + d / x) / x) / x
            bad = alive & ~(x > 0)
            if bad.any():
                first[bad] = n
                alive &= ~bad
                # park dead orbits somewhere harmless
                x[~alive] = 1.0
    return first


def _tup(trace):
    return None if trace is None else tuple(trace)


# ---- regime classification ------------------------------------------------------

REGIMES = (
    "T4a", "T4b", "T4c", "T4d",
    "T5b", "T5c",
    "T6b", "T6c",
    "T7a1", "T7a21", "T7a22", "T7b",
    "ThreeEquilibria_Unclassified", "Unclassified",
)


@dataclass(frozen=True)
class Regime:
    """Everything the per-x0 prediction needs, computed once per parameter set."""

    label: str
    equilibria: tuple[Equilibrium, ...]
    cycles: tuple[TwoCycle, ...]
    # basin boundary points: p2/q2, delta, delta', equilibria, preimages of t_bar
    boundaries: tuple[float, ...] = ()
    delta: float | None = None
    preimage_set: tuple[float, ...] = ()
    notes: tuple[str, ...] = field(default=())


def _nested(cycles: Sequence[TwoCycle], t_bar: float) -> bool:
    ps = [cyc.p for cyc in cycles]
    qs = [cyc.q for cyc in cycles]
    return ps == sorted(ps) and qs == sorted(qs, reverse=True) and all(
        cyc.p < t_bar < cyc.q for cyc in cycles
    )


@lru_cache(maxsize=1024)
def classify(params: Params) -> Regime:
    """Pick the convergence case that covers ``params``.

    Parameter sets no case covers get ``Unclassified`` (or
    ``ThreeEquilibria_Unclassified``) with a note; nothing is extrapolated.
    """
    if not params.is_valid():
        raise RegimeError(f"{params} does not satisfy c > c_minus")
    eqs = equilibria(params)
    cycles = two_cycles(params)

    def unclassified(note: str, label: str = "Unclassified") -> Regime:
        return Regime(label, eqs, cycles, notes=(note,))

    if any(cyc.tangent for cyc in cycles):
        return unclassified("tangent case - semistable 2-cycle (even-multiplicity root of G)")

    if params.c >= c_star(params.b, params.d):
        t_bar = eqs[0].value
        if len(eqs) != 1 or not _nested(cycles, t_bar):
            return unclassified("decreasing map without the expected nested cycles")
        label = ("T4a", "T4b", "T4c", "T4d")[len(cycles)]
        if len(cycles) >= 2:
            bounds = _outer_bounds(cycles) + ((t_bar,) if len(cycles) == 3 else ())
        else:
            bounds = (t_bar,) if cycles else ()
        return Regime(label, eqs, cycles, bounds)

    ext = extrema(params)
    if len(eqs) == 3:
        return unclassified("three equilibria: simulation only", "ThreeEquilibria_Unclassified")
    if len(eqs) == 1:
        t_bar = eqs[0].value
        if t_bar >= ext.x_m:
            if not cycles:
                return Regime("T5b", eqs, cycles)
            if len(cycles) == 2 and _nested(cycles, t_bar) and cycles[1].p < ext.x_m:
                return Regime("T5c", eqs, cycles, _outer_bounds(cycles))
            return unclassified("unexpected 2-cycle pattern with t_bar >= x_m")
        if not cycles:
            return Regime("T6b", eqs, cycles)
        if len(cycles) == 1:
            cyc = cycles[0]
            if cyc.p < t_bar < cyc.q <= ext.x_m:
                s = _preimage_set(params, t_bar)
                return Regime("T6c", eqs, cycles, s, preimage_set=s)
        return unclassified("unexpected 2-cycle pattern with t_bar < x_m")

    # two equilibria: exactly one of them is a tangency
    t1, t2 = eqs
    a = params.a
    if t2.tangent and not t1.tangent:
        if t2.value > a * (1 + TANGENT_SLACK):
            return unclassified("c = c_m but t_bar_2 > a")
        try:
            delta = preimage_below_xm(params, t2.value)
        except RegimeError:
            return unclassified("no preimage of t_bar_2 below x_m")
        bounds = (delta, t2.value)
        if ext.x_m <= t1.value:
            return Regime("T7a1", eqs, cycles, bounds, delta=delta)
        if not cycles:
            return Regime("T7a21", eqs, cycles, bounds, delta=delta)
        if len(cycles) == 1 and cycles[0].p < t1.value < cycles[0].q <= ext.x_m:
            s = _backward(params, t1.value)
            return Regime("T7a22", eqs, cycles, bounds + s, delta=delta, preimage_set=s)
        return unclassified("c = c_m with an unexpected 2-cycle pattern")
    if t1.tangent and not t2.tangent:
        if t1.value > a * (1 + TANGENT_SLACK):
            return unclassified("c = c_M but t_bar_1 > a")
        try:
            delta = preimage_below_xm(params, t1.value)
        except RegimeError:
            return unclassified("no preimage of t_bar_1 below x_m")
        return Regime("T7b", eqs, cycles, (delta, t1.value), delta=delta)
    return unclassified("two equilibria without a single tangency")


def _outer_bounds(cycles: Sequence[TwoCycle]) -> tuple[float, ...]:
    return (cycles[1].p, cycles[1].q)


def _preimage_set(params: Params, t_bar: float) -> tuple[float, ...]:
    if preimage_set_is_trivial(params):
        return (t_bar,)
    return _backward(params, t_bar)


def _backward(params: Params, point: float) -> tuple[float, ...]:
    return tuple(backward_orbit(params, point, depth=PREIMAGE_DEPTH))


# ---- prediction ---------------------------------------------------------------


@dataclass(frozen=True)
class FatePrediction:
    regime: str
    predicted: Fate | None
    basin_note: str


def _same(x: float, y: float) -> bool:
    return math.isclose(x, y, rel_tol=1e-12, abs_tol=0.0)


def _in_set(x: float, pts: Sequence[float]) -> bool:
    return any(_same(x, s) for s in pts)


def predict_fate(params: Params, x0: float) -> FatePrediction:
    """The limit of the orbit from ``x0`` predicted by the applicable convergence case."""
    reg = classify(params)
    eqs, cyc = reg.equilibria, reg.cycles
    lab = reg.label
    if lab in ("Unclassified", "ThreeEquilibria_Unclassified"):
        return FatePrediction(lab, None, "; ".join(reg.notes))

    def fp(e: Equilibrium) -> FixedPoint:
        return FixedPoint(e.value)

    def cy(k: int) -> Cycle:
        return Cycle(cyc[k].p, cyc[k].q)

    if lab in ("T4a", "T5b", "T6b"):
        return FatePrediction(lab, fp(eqs[0]), "every orbit converges to the equilibrium")
    if lab == "T4b":
        if _same(x0, eqs[0].value):
            return FatePrediction(lab, fp(eqs[0]), "x0 is the equilibrium")
        return FatePrediction(lab, cy(0), "every x0 other than the equilibrium reaches the cycle")
    if lab in ("T4c", "T5c", "T4d"):
        p2, q2 = cyc[1].p, cyc[1].q
        if _same(x0, p2) or _same(x0, q2):
            return FatePrediction(lab, cy(1), "x0 lies on the inner repelling cycle")
        if p2 < x0 < q2:
            if lab == "T4d":
                if _same(x0, eqs[0].value):
                    return FatePrediction(lab, fp(eqs[0]), "x0 is the equilibrium")
                return FatePrediction(lab, cy(2), "x0 in (p2, q2): innermost cycle")
            return FatePrediction(lab, fp(eqs[0]), "x0 in (p2, q2)")
        return FatePrediction(lab, cy(0), "x0 outside [p2, q2]: outer cycle")
    if lab == "T6c":
        if _in_set(x0, reg.preimage_set):
            return FatePrediction(lab, fp(eqs[0]), "x0 is a preimage of the equilibrium")
        return FatePrediction(lab, cy(0), "x0 off the preimage set of the equilibrium")
    t1, t2 = eqs
    if lab in ("T7a1", "T7a21"):
        if reg.delta < x0 < t2.value:
            return FatePrediction(lab, fp(t1), "x0 in (delta, t_bar_2)")
        return FatePrediction(lab, fp(t2), "x0 outside (delta, t_bar_2)")
    if lab == "T7a22":
        if reg.delta < x0 < t2.value:
            if _in_set(x0, reg.preimage_set):
                return FatePrediction(lab, fp(t1), "x0 is a preimage of t_bar_1")
            return FatePrediction(lab, cy(0), "x0 in (delta, t_bar_2) off the preimage set")
        return FatePrediction(lab, fp(t2), "x0 outside (delta, t_bar_2)")
    if lab == "T7b":
        if reg.delta <= x0 <= t1.value:
            return FatePrediction(lab, fp(t1), "x0 in [delta', t_bar_1]")
        return FatePrediction(lab, fp(t2), "x0 outside [delta', t_bar_1]")
    raise AssertionError(f"unhandled regime {lab}")


# ---- comparison ---------------------------------------------------------------


def attractor_key(fate: Fate, eqs: Sequence[Equilibrium], cycles: Sequence[TwoCycle]) -> tuple:
    """Identify a fate with the nearest computed equilibrium or cycle."""
    if isinstance(fate, FixedPoint) and eqs:
        i = min(range(len(eqs)), key=lambda k: abs(eqs[k].value - fate.value))
        return ("equilibrium", i)
    if isinstance(fate, Cycle) and cycles:
        j = min(
            range(len(cycles)),
            key=lambda k: abs(math.log(cycles[k].p / fate.p)) + abs(math.log(cycles[k].q / fate.q)),
        )
        return ("cycle", j)
    return (fate.kind,)


@dataclass(frozen=True)
class SampleOutcome:
    x0: float
    status: str  # agree | mismatch | boundary | whitelisted | unclassified
    predicted: Fate | None
    simulated: Fate | None


@dataclass(frozen=True)
class CrossValidation:
    regime: str
    outcomes: tuple[SampleOutcome, ...]

    def count(self, status: str) -> int:
        return sum(o.status == status for o in self.outcomes)

    @property
    def compared(self) -> int:
        return self.count("agree") + self.count("mismatch")

    @property
    def agreement_rate(self) -> float:
        n = self.compared
        return self.count("agree") / n if n else float("nan")

    @property
    def mismatches(self) -> list[SampleOutcome]:
        return [o for o in self.outcomes if o.status == "mismatch"]


def near_boundary(x0: float, boundaries: Sequence[float], margin: float = BOUNDARY_MARGIN) -> bool:
    return any(abs(x0 - b) <= margin * abs(b) for b in boundaries)


def cross_validate(
    params: Params,
    x0_samples: Sequence[float],
    max_iter: int | None = None,
    tol_conv: float = TOL_CONV,
    margin: float = BOUNDARY_MARGIN,
) -> CrossValidation:
    """Compare analytic predictions with simulated fates, sample by sample."""
    reg = classify(params)
    outcomes = []
    for x0 in x0_samples:
        x0 = float(x0)
        pred = predict_fate(params, x0)
        if pred.predicted is None:
            outcomes.append(SampleOutcome(x0, "unclassified", None, None))
            continue
        if near_boundary(x0, reg.boundaries, margin):
            outcomes.append(SampleOutcome(x0, "boundary", pred.predicted, None))
            continue
        sim = iterate_orbit(params, x0, max_iter, tol_conv).fate
        k_pred = attractor_key(pred.predicted, reg.equilibria, reg.cycles)
        k_sim = attractor_key(sim, reg.equilibria, reg.cycles)
        if k_pred == k_sim:
            status = "agree"
        elif (
            reg.label in ("T6c", "T7a22")
            and isinstance(pred.predicted, Cycle)
            and k_sim == ("equilibrium", 0)
        ):
            # deeper preimages of the equilibrium than the enumerated set
            status = "whitelisted"
        else:
            status = "mismatch"
        outcomes.append(SampleOutcome(x0, status, pred.predicted, sim))
    return CrossValidation(reg.label, tuple(outcomes))


@dataclass(frozen=True)
class BasinScan:
    x0: tuple[float, ...]
    fates: tuple[Fate, ...]
    keys: tuple[tuple, ...]
    # i marks a basin boundary between x0[i] and x0[i + 1]
    boundaries: tuple[int, ...]

    def bands(self) -> list[tuple[float, float, tuple]]:
        """Maximal runs of equal fate as ``(first_x0, last_x0, key)``."""
        out = []
        start = 0
        for i in list(self.boundaries) + [len(self.x0) - 1]:
            out.append((self.x0[start], self.x0[i], self.keys[start]))
            start = i + 1
        return out


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    if not lo > 0:
        raise ValueError("grid must lie in (0, inf)")
    if n == 1:
        return np.array([float(lo)])
    return np.geomspace(lo, hi, n)


def basin_scan(
    params: Params,
    grid: tuple[float, float, int],
    max_iter: int | None = None,
    tol_conv: float = TOL_CONV,
) -> BasinScan:
    lo, hi, n = grid
    xs = log_grid(lo, hi, n)
    eqs, cycles = equilibria(params), two_cycles(params)
    fates = [iterate_orbit(params, float(x), max_iter, tol_conv).fate for x in xs]
    keys = [attractor_key(f, eqs, cycles) for f in fates]
    bounds = tuple(i for i in range(len(keys) - 1) if keys[i] != keys[i + 1])
    return BasinScan(tuple(float(x) for x in xs), tuple(fates), tuple(keys), bounds)
