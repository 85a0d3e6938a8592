"""Per-parameter analysis records and c-sweeps, with JSON/CSV serialization."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from typing import IO, Any, Iterable

import numpy as np

from .dynamics import classify
from .model import Params, extrema
from .structures import Equilibrium, InvariantInterval, RegimeError, TwoCycle, invariant_interval
from .thresholds import Fold, Thresholds, compute_thresholds

INVALID = "invalid"
SWEEP_COLUMNS = ("c", "c_minus", "c_star", "n_equilibria", "n_cycles", "regime")


@dataclass(frozen=True)
class AnalysisReport:
    params: Params
    thresholds: Thresholds
    regime: str
    equilibria: tuple[Equilibrium, ...] = ()
    cycles: tuple[TwoCycle, ...] = ()
    invariant_interval: InvariantInterval | None = None
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        # repr-based float output is the shortest string that round-trips exactly
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AnalysisReport":
        th = dict(data["thresholds"])
        th["fold"] = Fold(**th["fold"]) if th.get("fold") else None
        ii = data.get("invariant_interval")
        return cls(
            params=Params(**data["params"]),
            thresholds=Thresholds(**th),
            regime=data["regime"],
            equilibria=tuple(Equilibrium(**e) for e in data.get("equilibria", ())),
            cycles=tuple(TwoCycle(**c) for c in data.get("cycles", ())),
            invariant_interval=InvariantInterval(**ii) if ii else None,
            notes=tuple(data.get("notes", ())),
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        p, t = self.params, self.thresholds
        lines = [
            f"params      a={p.a:.6g} b={p.b:.6g} c={p.c:.6g} d={p.d:.6g}",
            f"regime      {self.regime}",
            f"c_minus     {t.c_minus:.6g}",
            f"c_star      {t.c_star:.6g}",
            f"c1_star     {t.c1_star:.6g}",
            f"c_b         {t.c_b:.6g}",
        ]
        if t.fold:
            lines.append(f"fold        c_m={t.fold.c_m:.6g} c_M={t.fold.c_M:.6g}")
        for e in self.equilibria:
            tag = " (tangent)" if e.tangent else ""
            lines.append(f"equilibrium {e.value:.6g}  multiplier {e.multiplier:.6g}  {e.stability}{tag}")
        for cyc in self.cycles:
            lines.append(f"2-cycle     ({cyc.p:.6g}, {cyc.q:.6g})  multiplier {cyc.multiplier:.6g}")
        if self.invariant_interval:
            ii = self.invariant_interval
            lines.append(f"interval I  [{ii.lo:.6g}, {ii.hi:.6g}]  hypothesis (H): {ii.hypothesis_H}")
        lines.extend(f"note        {n}" for n in self.notes)
        return "\n".join(lines)


def analyze(params: Params) -> AnalysisReport:
    th = compute_thresholds(params.a, params.b, params.d)
    notes = []
    if th.fold_degenerate:
        notes.append("fold narrower than numeric resolution; reported as absent")
    if not params.is_valid():
        notes.append("c <= c_minus: nonpositive iterates possible")
        return AnalysisReport(params, th, INVALID, notes=tuple(notes))
    reg = classify(params)
    notes.extend(reg.notes)
    ii = None
    ext = extrema(params)
    if ext is not None and len(reg.equilibria) == 1 and reg.equilibria[0].value < ext.x_m:
        try:
            ii = invariant_interval(params)
        except RegimeError:
            ii = None
    return AnalysisReport(params, th, reg.label, reg.equilibria, reg.cycles, ii, tuple(notes))


@dataclass(frozen=True)
class SweepRow:
    c: float
    c_minus: float
    c_star: float
    n_equilibria: int | None
    n_cycles: int | None
    regime: str


def project(report: AnalysisReport) -> SweepRow:
    valid = report.regime != INVALID
    return SweepRow(
        c=report.params.c,
        c_minus=report.thresholds.c_minus,
        c_star=report.thresholds.c_star,
        n_equilibria=len(report.equilibria) if valid else None,
        n_cycles=len(report.cycles) if valid else None,
        regime=report.regime,
    )


def _row(args: tuple[float, float, float, float]) -> SweepRow:
    return project(analyze(Params(*args)))


def sweep(
    a: float,
    b: float,
    d: float,
    c_range: tuple[float, float, int],
    executor=None,
) -> list[SweepRow]:
    """One row per c on ``linspace(lo, hi, steps)``; ``steps == 1`` gives just ``lo``.

    Pass a ``concurrent.futures`` executor to compute rows in parallel; rows
    stay in c order either way.
    """
    lo, hi, steps = c_range
    if steps < 1:
        raise ValueError("steps must be at least 1")
    cs = [float(lo)] if steps == 1 else [float(c) for c in np.linspace(lo, hi, int(steps))]
    jobs = [(a, b, c, d) for c in cs]
    mapper = executor.map if executor is not None else map
    return list(mapper(_row, jobs))


def write_sweep_csv(rows: Iterable[SweepRow], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v)
                    for v in (r.c, r.c_minus, r.c_star, r.n_equilibria, r.n_cycles, r.regime)])


def read_sweep_csv(fh: IO[str]) -> list[SweepRow]:
    out = []
    for rec in csv.DictReader(fh):
        out.append(SweepRow(
            c=float(rec["c"]),
            c_minus=float(rec["c_minus"]),
            c_star=float(rec["c_star"]),
            n_equilibria=int(rec["n_equilibria"]) if rec["n_equilibria"] else None,
            n_cycles=int(rec["n_cycles"]) if rec["n_cycles"] else None,
            regime=rec["regime"],
        ))
    return out


def all_finite(obj: Any) -> bool:
    if isinstance(obj, float):
        return math.isfinite(obj)
    if isinstance(obj, dict):
        return all(all_finite(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return all(all_finite(v) for v in obj)
    return True
