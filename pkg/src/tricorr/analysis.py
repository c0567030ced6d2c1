"""Threshold finding, parameter sweeps, scenario robustness ranking, and
loss-region classification.

Thresholds are located by bisection on a signed presence margin that is
continuous in T: the pre-clamp closed form when a reliable one is
catalogued, otherwise 1/2 minus the smallest symplectic eigenvalue of the
relevant transposed / conditional matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UnsupportedFormulaError
from .loss import LossConfig, Scenario, apply_loss, scenario_config
from .measures import (
    UNRELIABLE,
    CorrelationReport,
    MeasureId,
    default_measures,
    formula_status,
    gaussian_steering,
    log_negativity,
    monogamy_residuals,
    reference_formula,
)
from .symplectic import (
    ModePartition,
    partial_transpose,
    reduced_cm,
    schur_complement,
    symplectic_eigenvalues,
)
from .tritter import MODE_INDEX, MODE_LABELS, ideal_output_cm

BISECTION_TOL = 1e-8
ORACLE_TOL = 1e-9
# a root this close to the lower bracket edge means the measure is present
# throughout the open interval (its margin is exactly zero at the edge)
EDGE_TOL = 1e-6


class RegionLabel(enum.Enum):
    """Loss regimes, ordered by decreasing correlation strength: steering
    plus entanglement (I), entanglement including some pairwise (II), only
    the collective 1-vs-2 entanglement (III), none (separable)."""

    I = "I"
    II = "II"
    III = "III"
    SEPARABLE = "separable"

    @property
    def rank(self) -> int:
        return ("I", "II", "III", "separable").index(self.value)


def lossy_cm(lam: float, scenario: Scenario | None = None, loss: LossConfig | None = None) -> np.ndarray:
    """Output covariance matrix after the requested loss (scenario wins if
    both are given; neither means ideal)."""
    V = ideal_output_cm(lam)
    if scenario is not None:
        loss = scenario_config(scenario)
    if loss is not None:
        V = apply_loss(V, loss)
    return V


def measure_value(V: np.ndarray, mid: MeasureId) -> float:
    """Numeric value of one measure on a covariance matrix."""
    fn = gaussian_steering if mid.is_steering else log_negativity
    return fn(V, mid.partition)


def _presence_margin_numeric(V: np.ndarray, mid: MeasureId) -> float:
    """1/2 - min symplectic eigenvalue of the matrix behind the measure;
    positive iff the measure is nonzero, continuous in the state."""
    part = mid.partition
    if mid.is_steering:
        M = schur_complement(V, part)
    else:
        Vr = reduced_cm(V, part.modes)
        M = partial_transpose(Vr, tuple(range(len(part.party_a), len(part.modes))))
    return 0.5 - float(symplectic_eigenvalues(M)[0])


def _presence_margin(mid: MeasureId, lam: float, T: float) -> float:
    try:
        if formula_status(mid) != UNRELIABLE:
            return reference_formula(mid, lam, T).value
    except UnsupportedFormulaError:
        pass
    scen = Scenario(mid.scenario, T) if mid.scenario else None
    return _presence_margin_numeric(lossy_cm(lam, scen), mid)


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of a threshold search: T_star is the transmissivity where
    the measure vanishes, or None when its presence does not change over
    the bracket (then present_everywhere tells which way)."""

    measure: MeasureId
    lam: float
    T_star: float | None
    present_everywhere: bool | None = None


def find_threshold(measure: MeasureId, lam: float, bracket: tuple[float, float] = (0.0, 1.0)) -> ThresholdResult:
    """Bisection for the transmissivity at which a measure switches
    between present and absent, to |dT| <= 1e-8."""
    if measure.scenario is None:
        raise DomainError("threshold search needs a measure with a scenario context")
    lo, hi = bracket
    if not 0.0 <= lo < hi <= 1.0:
        raise DomainError(f"bad bracket {bracket}")
    f_lo = _presence_margin(measure, lam, lo)
    f_hi = _presence_margin(measure, lam, hi)
    if (f_lo > 0) == (f_hi > 0):
        return ThresholdResult(measure, lam, None, present_everywhere=f_hi > 0)
    while hi - lo > BISECTION_TOL:
        mid = (lo + hi) / 2
        if (_presence_margin(measure, lam, mid) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    root = (lo + hi) / 2
    if root - bracket[0] < EDGE_TOL:
        return ThresholdResult(measure, lam, None, present_everywhere=f_hi > 0)
    return ThresholdResult(measure, lam, root)


def classify_region_from_cm(V: np.ndarray, k: str = "c") -> RegionLabel:
    """Region of a three-mode covariance matrix, judged on the split of
    single mode k against the other two: I when any 1-vs-2 steering
    direction survives, II when only entanglement does (including some
    pairwise), III when only the collective entanglement does, separable
    when even that is gone."""
    k_idx = MODE_INDEX[k]
    rest = tuple(m for m in range(3) if m != k_idx)
    labels = MODE_LABELS
    tri = MeasureId("E", (labels[k_idx],), tuple(labels[m] for m in rest))
    if measure_value(V, tri) <= 0.0:
        return RegionLabel.SEPARABLE
    steer = max(
        gaussian_steering(V, ModePartition((k_idx,), rest)),
        gaussian_steering(V, ModePartition(rest, (k_idx,))),
    )
    if steer > 0.0:
        return RegionLabel.I
    pair_ids = [MeasureId("E", (labels[i],), (labels[j],)) for i in range(3) for j in range(i + 1, 3)]
    if any(measure_value(V, p) > 0.0 for p in pair_ids):
        return RegionLabel.II
    return RegionLabel.III


def classify_region(lam: float, scenario: Scenario, T: float | None = None) -> RegionLabel:
    """Region for the tritter state under a named loss scenario."""
    if T is not None:
        scenario = Scenario(scenario.id, T, scenario.single_mode, scenario.lossy_pair_member)
    return classify_region_from_cm(lossy_cm(lam, scenario), scenario.single_mode)


def scenario_ranking(lam: float, T: float, kind: str = "entanglement") -> tuple[int, ...]:
    """Scenario ids 1-5 ordered by decreasing measure strength at (lam, T).

    'entanglement' ranks the collective 1-vs-2 entanglement; 'steering'
    ranks the single-mode -> pair direction.  Ties (e.g. T = 1, where no
    scenario differs) break toward the smaller id.
    """
    if kind not in ("entanglement", "steering"):
        raise DomainError(f"kind must be 'entanglement' or 'steering', got {kind!r}")
    if kind == "entanglement":
        mid = MeasureId("E", ("c",), ("a", "b"))
    else:
        mid = MeasureId("S", ("c",), ("a", "b"))
    vals = {}
    for s in (1, 2, 3, 4, 5):
        vals[s] = measure_value(lossy_cm(lam, Scenario(s, T)), mid)
    return tuple(sorted(vals, key=lambda s: (-vals[s], s)))


# ---------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepSpec:
    """Grid sweep over T or lambda with the other parameter fixed."""

    variable: str  # "T" or "lambda"
    start: float
    stop: float
    step: float
    fixed: float
    scenario: int | None = None
    measures: tuple[MeasureId, ...] = ()

    def __post_init__(self):
        if self.variable not in ("T", "lambda"):
            raise DomainError(f"variable must be 'T' or 'lambda', got {self.variable!r}")
        if self.step <= 0:
            raise DomainError("step must be positive")
        if self.stop < self.start:
            raise DomainError("stop must be >= start")
        if self.variable == "T" and self.scenario is None:
            raise DomainError("a T sweep needs a scenario")
        object.__setattr__(self, "measures", tuple(self.measures))

    def grid(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 0.5))
        pts = [min(self.start + i * self.step, self.stop) for i in range(n + 1)]
        return [p for p in pts if p <= self.stop]


@dataclass(frozen=True)
class SweepResult:
    """Sweep table: one row dict per grid point, plus the stable column
    order used by the serializers."""

    spec: SweepSpec
    columns: tuple[str, ...]
    rows: tuple[dict, ...]

    @property
    def mismatch_count(self) -> int:
        return sum(r["mismatches"] for r in self.rows)


def _sorted_measures(measures) -> list[MeasureId]:
    return sorted(measures, key=str)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every requested measure at each grid point via the numeric
    pipeline, attach clamped closed-form values where a reliable form is
    catalogued, and flag |numeric - closed| > 1e-9."""
    mids = _sorted_measures(spec.measures)
    cols = [spec.variable]
    if spec.variable == "T":
        cols.append("reflectivity")
    for m in mids:
        cols += [str(m), f"ref:{m}"]
    cols += ["mismatches", "region"]
    rows = []
    for v in spec.grid():
        if spec.variable == "T":
            lam, T = spec.fixed, v
        else:
            lam, T = v, spec.fixed
        scen = Scenario(spec.scenario, T) if spec.scenario is not None else None
        V = lossy_cm(lam, scen)
        row: dict = {spec.variable: v}
        if spec.variable == "T":
            row["reflectivity"] = 1.0 - v
        mismatches = 0
        for m in mids:
            num = measure_value(V, m)
            row[str(m)] = num
            ref = None
            try:
                if formula_status(m) != UNRELIABLE:
                    fv = reference_formula(m, lam, T)
                    if fv.domain_ok:
                        ref = fv.clamped
            except UnsupportedFormulaError:
                pass
            row[f"ref:{m}"] = ref
            if ref is not None and abs(ref - num) > ORACLE_TOL:
                mismatches += 1
        row["mismatches"] = mismatches
        row["region"] = classify_region_from_cm(V).value
        rows.append(row)
    return SweepResult(spec, tuple(cols), tuple(rows))


# ---------------------------------------------------------------------------
# full report for one parameter point

def evaluate_report(
    lam: float,
    scenario: Scenario | None = None,
    loss: LossConfig | None = None,
    measures=None,
) -> CorrelationReport:
    """All measures, closed-form companions, monogamy residuals, and the
    region label at one (lambda, loss) point."""
    V = lossy_cm(lam, scenario, loss)
    if scenario is not None:
        loss = scenario_config(scenario)
    elif loss is None:
        loss = LossConfig.lossless()
    scen_id = scenario.id if scenario is not None else None
    if measures is None:
        measures = default_measures(scen_id)
    mids = _sorted_measures(measures)
    values: dict[str, float] = {}
    refs: dict[str, float | None] = {}
    T = scenario.shared_T if scenario is not None else 1.0
    for m in mids:
        values[str(m)] = measure_value(V, m)
        ref = None
        try:
            if formula_status(m) != UNRELIABLE:
                fv = reference_formula(m, lam, T)
                if fv.domain_ok:
                    ref = fv.clamped
        except UnsupportedFormulaError:
            pass
        refs[str(m)] = ref
    mono = {k: monogamy_residuals(V, k) for k in MODE_LABELS}
    k = scenario.single_mode if scenario is not None else "c"
    region = classify_region_from_cm(V, k).value
    return CorrelationReport(lam, loss, scenario, values, refs, mono, region)
