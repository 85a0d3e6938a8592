"""Reference worked examples and a checker that recomputes them.

Each case records the parameter set, the convergence case it illustrates,
and the expected values: the 2-cycles (4 decimals), the number of
equilibria, and hypothesis (H) where it is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Params
from .report import analyze

CYCLE_TOL = 5e-4


@dataclass(frozen=True)
class GoldenCase:
    label: str
    params: tuple[float, float, float, float]
    regime: str
    cycles: tuple[tuple[float, float], ...] | None
    n_equilibria: int
    hypothesis_H: bool | None = None


CASES = (
    GoldenCase("A1", (1, 1, 1, 1), "T4a", (), 1),
    GoldenCase("A2", (0.1, 2, 1, 0.1), "T4b", ((0.1118, 169.4132),), 1),
    GoldenCase("A3", (0.21, 2.1, -2.8, 1.3), "T4c", ((0.2593, 41.2206), (0.3525, 13.3090)), 1),
    GoldenCase(
        "A4", (0.18, 2.1, -2.8, 1.3), "T4d",
        ((0.2001, 102.9321), (0.4058, 7.8071), (0.7646, 1.0453)), 1,
    ),
    GoldenCase("B1", (1, 5, -4, 1), "T5b", (), 1),
    GoldenCase("B2", (0.1, 5, -4, 1), "T5c", ((0.1111, 450.5876), (0.2019, 48.2751)), 1),
    GoldenCase("B3", (0.15, 4, -4, 1.1), "T5b", (), 1),
    GoldenCase("B4", (0.1, 4, -4, 1.1), "T5c", ((0.1068, 590.5885), (0.2378, 28.0116)), 1),
    GoldenCase("C1", (0.7, 2.2, -3, 1), "T6b", (), 1, True),
    GoldenCase("C2", (1, 1, -3.3, 3), "T6c", ((1.1687, 1.3190),), 1, True),
    GoldenCase("D1", (1, 2.4, -3.8, 1.4), "T7a1", None, 2),
    GoldenCase("D2", (1, 2, -3, 1), "T7a21", (), 2),
    GoldenCase("D3", (1, 1.9, -2.8, 0.9), "T7a22", ((0.5573, 0.5937),), 2),
    GoldenCase("D4", (2, 0.5, -3, 1.5), "T7b", None, 2),
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    computed: object
    ok: bool


@dataclass(frozen=True)
class CaseResult:
    label: str
    params: tuple[float, float, float, float]
    checks: tuple[Check, ...]
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)


def _cycles_match(expected, computed) -> bool:
    if len(expected) != len(computed):
        return False
    by_p = sorted(computed, key=lambda pq: pq[0])
    return all(
        abs(p - cp) <= CYCLE_TOL and abs(q - cq) <= CYCLE_TOL
        for (p, q), (cp, cq) in zip(sorted(expected), by_p)
    )


def check_case(case: GoldenCase) -> CaseResult:
    try:
        rep = analyze(Params.validated(*case.params))
    except Exception as exc:  # a numeric failure is a failed row, not a crash
        return CaseResult(case.label, case.params, (), f"{type(exc).__name__}: {exc}")
    checks = [
        Check("regime", case.regime, rep.regime, rep.regime == case.regime),
        Check("n_equilibria", case.n_equilibria, len(rep.equilibria),
              len(rep.equilibria) == case.n_equilibria),
    ]
    if case.cycles is not None:
        computed = [(c.p, c.q) for c in rep.cycles]
        checks.append(Check("cycles", list(case.cycles), computed, _cycles_match(case.cycles, computed)))
    if case.hypothesis_H is not None:
        got = rep.invariant_interval.hypothesis_H if rep.invariant_interval else None
        checks.append(Check("hypothesis_H", case.hypothesis_H, got, got == case.hypothesis_H))
    return CaseResult(case.label, case.params, tuple(checks))


def verify(cases=CASES) -> list[CaseResult]:
    return [check_case(c) for c in cases]
