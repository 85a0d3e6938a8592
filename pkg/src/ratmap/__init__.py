"""Equilibria, 2-cycles and orbit fates of x -> (a x^3 + b x^2 + c x + d) / x^3."""

from .dynamics import basin_scan, classify, cross_validate, iterate_orbit, predict_fate
from .model import Extrema, InvalidParameters, Params, extrema, phi, phi2, phi_prime
from .polyroot import NumericFailure, Poly
from .report import AnalysisReport, analyze, sweep
from .structures import RegimeError, equilibria, two_cycles
from .thresholds import compute_thresholds

__all__ = [
    "AnalysisReport", "Extrema", "InvalidParameters", "NumericFailure", "Params", "Poly",
    "RegimeError", "analyze", "basin_scan", "classify", "clear_caches", "compute_thresholds",
    "cross_validate", "equilibria", "extrema", "iterate_orbit", "phi", "phi2", "phi_prime",
    "predict_fate", "sweep", "two_cycles",
]


def clear_caches() -> None:
    """Drop memoized per-parameter results (needed only after monkeypatching internals)."""
    from . import dynamics, structures, thresholds

    for fn in (dynamics.classify, structures.equilibria, structures.two_cycles, thresholds.c_minus):
        fn.cache_clear()
