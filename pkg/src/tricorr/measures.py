"""Entanglement (logarithmic negativity) and Gaussian EPR steering.

Numeric pipeline
----------------
Both quantifiers reduce to symplectic eigenvalues: of the partially
transposed covariance matrix for entanglement, of the Schur-complement
conditional matrix for steering.  Every eigenvalue modulus of i*Omega*V
occurs twice in the raw spectrum and both copies contribute to the sum
-sum ln(2 nu); this doubled normalization is what the closed-form
catalogue below uses (for a 2x2 conditional matrix the catalogue speaks
of two equal eigenvalues).

Closed-form catalogue
---------------------
``reference_formula`` evaluates the catalogued closed form for a measure
under a named loss scenario, pre-clamp (possibly negative, so threshold
solvers can root-find through zero).  Each formula carries a status:

* ``verified`` — transcription matches the numeric pipeline (<= 1e-9);
* ``corrected`` — the original transcription disagrees with the pipeline;
  an exactly corrected variant (validated symbolically and on a grid) is
  evaluated instead, and ``printed_formula`` retains the original;
* ``unreliable`` — the original transcription disagrees and no corrected
  closed form of the same shape exists (the minimal symplectic eigenvalue
  is a root of an irreducible cubic); the numeric pipeline is
  authoritative and ``reference_formula`` raises.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedFormulaError
from .loss import LossConfig, Scenario, scenario_config
from .symplectic import (
    ModePartition,
    partial_transpose,
    reduced_cm,
    schur_complement,
    symplectic_eigenvalues,
)
from .tritter import MODE_INDEX, MODE_LABELS

# eigenvalues this close to 1/2 are treated as exactly 1/2 (contribute 0)
EIG_CLIP_TOL = 1e-12


# ---------------------------------------------------------------------------
# measure identifiers

_ALIASES = {
    "E:pair": "E:a|b",
    "E:1v2": "E:c|ab",
    "S:k->ij": "S:c->ab",
    "S:ij->k": "S:ab->c",
}


@dataclass(frozen=True)
class MeasureId:
    """One measure: entanglement ('E', unordered split) or steering ('S',
    party_a steers party_b), with an optional loss-scenario context used by
    the closed-form catalogue."""

    kind: str
    party_a: tuple[str, ...]
    party_b: tuple[str, ...]
    scenario: int | None = None

    def __post_init__(self):
        if self.kind not in ("E", "S"):
            raise ValueError(f"kind must be 'E' or 'S', got {self.kind!r}")
        a = tuple(self.party_a)
        b = tuple(self.party_b)
        for m in a + b:
            if m not in MODE_INDEX:
                raise ValueError(f"unknown mode label {m!r}")
        if set(a) & set(b):
            raise ValueError("parties overlap")
        if self.kind == "E":
            # unordered split: canonical order = smaller party first,
            # then lexicographic
            a, b = sorted((tuple(sorted(a)), tuple(sorted(b))), key=lambda t: (len(t), t))
        object.__setattr__(self, "party_a", a)
        object.__setattr__(self, "party_b", b)
        if self.scenario is not None and self.scenario not in (1, 2, 3, 4, 5):
            raise ValueError(f"scenario must be 1..5 or None, got {self.scenario}")

    @property
    def is_steering(self) -> bool:
        return self.kind == "S"

    @property
    def partition(self) -> ModePartition:
        return ModePartition(
            tuple(MODE_INDEX[m] for m in self.party_a),
            tuple(MODE_INDEX[m] for m in self.party_b),
        )

    def __str__(self) -> str:
        sep = "->" if self.kind == "S" else "|"
        s = f"{self.kind}:{''.join(self.party_a)}{sep}{''.join(self.party_b)}"
        if self.scenario is not None:
            s += f"@s{self.scenario}"
        return s


def parse_measure_id(text: str) -> MeasureId:
    """Parse the CLI grammar, e.g. 'E:a|b', 'E:1v2', 'S:c->ab', 'S:ij->k',
    optionally suffixed with a scenario qualifier '@s3'."""
    s = text.strip()
    scenario = None
    m = re.fullmatch(r"(.+)@s([1-5])", s)
    if m:
        s, scenario = m.group(1), int(m.group(2))
    s = _ALIASES.get(s, s)
    m = re.fullmatch(r"([ES]):([abc]+)(\||->)([abc]+)", s)
    if not m:
        raise ValueError(f"cannot parse measure id {text!r}")
    kind, a, sep, b = m.groups()
    if kind == "S" and sep != "->" or kind == "E" and sep != "|":
        raise ValueError(f"separator {sep!r} does not match kind {kind!r} in {text!r}")
    return MeasureId(kind, tuple(a), tuple(b), scenario)


def default_measures(scenario: int | None = None) -> list[MeasureId]:
    """Every measure on three modes: 3 entanglement pairs, 3 one-vs-two
    splits, 6 ordered steering pairs, 6 one-vs-two steering directions."""
    out: list[MeasureId] = []
    labels = MODE_LABELS
    for i in range(3):
        for j in range(i + 1, 3):
            out.append(MeasureId("E", (labels[i],), (labels[j],), scenario))
    for k in range(3):
        rest = tuple(m for m in labels if m != labels[k])
        out.append(MeasureId("E", (labels[k],), rest, scenario))
    for i in range(3):
        for j in range(3):
            if i != j:
                out.append(MeasureId("S", (labels[i],), (labels[j],), scenario))
    for k in range(3):
        rest = tuple(m for m in labels if m != labels[k])
        out.append(MeasureId("S", (labels[k],), rest, scenario))
        out.append(MeasureId("S", rest, (labels[k],), scenario))
    return out


# ---------------------------------------------------------------------------
# numeric pipeline

def _neg_log_sum(nus: np.ndarray) -> float:
    """-2 * sum(ln(2 nu)) over eigenvalues below 1/2 (both spectrum copies
    contribute), with a small clip band around 1/2."""
    total = 0.0
    for nu in nus:
        if nu < 0.5 - EIG_CLIP_TOL:
            total -= 2.0 * math.log(2.0 * nu)
    return total


def log_negativity(V: np.ndarray, partition: ModePartition) -> float:
    """Logarithmic negativity of the split party_a | party_b, computed on
    the reduced state of those modes (others traced out)."""
    modes = partition.modes
    Vr = reduced_cm(V, modes)
    local_b = tuple(range(len(partition.party_a), len(modes)))
    nus = symplectic_eigenvalues(partial_transpose(Vr, local_b))
    return _neg_log_sum(nus)


def gaussian_steering(V: np.ndarray, partition: ModePartition) -> float:
    """Gaussian EPR steering of party_b by party_a (asymmetric): symplectic
    eigenvalues of the conditional covariance matrix after Gaussian
    measurements on party_a."""
    cond = schur_complement(V, partition)
    return _neg_log_sum(symplectic_eigenvalues(cond))


def monogamy_residuals(V: np.ndarray, k) -> tuple[float, float]:
    """Residuals of the two steering-monogamy inequalities for single mode
    k against the other two modes i, j:

        S(ij -> k) - S(i -> k) - S(j -> k)  >= 0
        S(k -> ij) - S(k -> i) - S(k -> j)  >= 0

    Returned raw (not clamped)."""
    k_idx = MODE_INDEX[k] if isinstance(k, str) else int(k)
    rest = tuple(m for m in range(3) if m != k_idx)
    s = gaussian_steering
    to_k = s(V, ModePartition(rest, (k_idx,)))
    from_k = s(V, ModePartition((k_idx,), rest))
    to_k_parts = sum(s(V, ModePartition((i,), (k_idx,))) for i in rest)
    from_k_parts = sum(s(V, ModePartition((k_idx,), (i,))) for i in rest)
    return (to_k - to_k_parts, from_k - from_k_parts)


# ---------------------------------------------------------------------------
# closed-form catalogue

VERIFIED = "verified"
CORRECTED = "corrected"
UNRELIABLE = "unreliable"


@dataclass(frozen=True)
class FormulaValue:
    """Pre-clamp closed-form value.  ``domain_ok`` is False when a radicand
    went negative (value is NaN there); consumers clamp at zero."""

    value: float
    domain_ok: bool = True
    status: str = VERIFIED

    @property
    def clamped(self) -> float:
        if not self.domain_ok:
            return math.nan
        return max(0.0, self.value)


def _sqrt_flagged(x: float) -> tuple[float, bool]:
    if x < 0:
        return math.nan, False
    return math.sqrt(x), True


def ideal_pair_entanglement(lam: float) -> float:
    """ln[3(1+lam)/(3-lam)] — any two modes, no loss."""
    return math.log(3 * (1 + lam) / (3 - lam))


def ideal_one_vs_two_entanglement(lam: float) -> float:
    """ln[9(1-lam^2)/(sqrt(9-lam^2)-sqrt(8)lam)^2] — any 1-vs-2 split."""
    return math.log(9 * (1 - lam**2) / (math.sqrt(9 - lam**2) - math.sqrt(8) * lam) ** 2)


def ideal_one_vs_two_steering(lam: float) -> float:
    """ln[(9-lam^2)/(9(1-lam^2))] — symmetric in direction, no loss."""
    return math.log((9 - lam**2) / (9 * (1 - lam**2)))


def pair_conditional_eigenvalue(lam: float, t_steering: float, t_steered: float) -> float:
    """Symplectic eigenvalue of the two-mode conditional matrix (steering
    between two single modes) under loss; always >= 1/2, hence pairwise
    steering vanishes identically.

    The denominator uses (3 - 4 T_steering)^2; the as-published variant
    with (3 - T_steering)^2 fails to reduce to 1/2 in the lossless limit
    and is kept only in ``_printed_pair_conditional_eigenvalue``.
    """
    ti, tj = t_steering, t_steered
    l2 = lam * lam
    xi1 = 9 + 8 * (ti * ti + tj * tj) - 12 * (ti + tj) + 4 * ti * tj
    xi2 = 3 - 4 * (ti + tj - ti * tj)
    num = 9 - 2 * xi1 * l2 + xi2 * xi2 * l2 * l2
    den = 4 * (1 - l2) * (9 - (3 - 4 * ti) ** 2 * l2)
    return math.sqrt(num / den)


def _printed_pair_conditional_eigenvalue(lam: float, t_steering: float, t_steered: float) -> float:
    ti, tj = t_steering, t_steered
    l2 = lam * lam
    xi1 = 9 + 8 * (ti * ti + tj * tj) - 12 * (ti + tj) + 4 * ti * tj
    xi2 = 3 - 4 * (ti + tj - ti * tj)
    num = 9 - 2 * xi1 * l2 + xi2 * xi2 * l2 * l2
    den = 4 * (1 - l2) * (9 - (3 - ti) ** 2 * l2)
    return math.sqrt(num / den)


def _pair_entanglement_one_lossy(lam: float, T: float) -> tuple[float, bool]:
    l2 = lam * lam
    d1 = 5 - 16 * T + 8 * T * T
    d2 = (1 - T) ** 2 * (1 - 8 * T + 4 * T * T)
    root, ok = _sqrt_flagged(d2 * l2 + 9 * T)
    if not ok:
        return math.nan, False
    return math.log(9 * (1 - l2) / (9 - d1 * l2 - 4 * lam * root)), True


def _pair_entanglement_both_lossy(lam: float, T: float) -> float:
    # corrected second factor (1 + lam - 2 T lam); the as-published
    # (1 + lam + 2 T lam) does not reduce to the lossless form at T = 1
    return math.log(3 * (1 - lam**2) / ((3 - 3 * lam + 2 * T * lam) * (1 + lam - 2 * T * lam)))


def _printed_pair_entanglement_both_lossy(lam: float, T: float) -> float:
    return math.log(3 * (1 - lam**2) / ((3 - 3 * lam + 2 * T * lam) * (1 + lam + 2 * T * lam)))


def _tri_entanglement(scenario: int, lam: float, T: float) -> tuple[float, bool]:
    """One-vs-two entanglement (split: single mode k) under scenarios
    1/3/5 (verified) and 2/4 (as published; known unreliable)."""
    l2 = lam * lam
    if scenario == 1:
        e1 = 5 - 20 * T + 8 * T * T
        e2 = (1 - 4 * T + T * T) * (1 - 2 * T) ** 2
        root, ok = _sqrt_flagged(18 * T + e2 * l2)
        return (math.log(9 * (1 - l2) / (9 - e1 * l2 - 4 * lam * root)) if ok else math.nan, ok)
    if scenario == 2:
        z1 = 5 - 12 * T + 4 * T * T
        z2 = (1 - 2 * T) ** 2 * (1 - 4 * T + T * T)
        root, ok = _sqrt_flagged(36 * T + z2 * l2)
        return (math.log(9 * (1 - l2) / (9 - z1 * l2 - 2 * lam * root)) if ok else math.nan, ok)
    if scenario == 3:
        e3 = 5 - 14 * T + 2 * T * T
        e4 = (1 - 10 * T + T * T) * (2 - T) ** 2
        root, ok = _sqrt_flagged(72 * T + e4 * l2)
        return (math.log(9 * (1 - l2) / (9 - e3 * l2 - 2 * lam * root)) if ok else math.nan, ok)
    if scenario == 4:
        h1 = 5 - 16 * T + 8 * T * T
        h2 = (1 - 4 * T + T * T) ** 2
        h3 = 8 * T * (1 - T) ** 2
        root, ok = _sqrt_flagged(36 * T + h2 * l2 + h3 * T * T)
        return (math.log(9 * (1 - l2) / (9 - h1 * l2 - 2 * lam * root)) if ok else math.nan, ok)
    if scenario == 5:
        e5 = 9 - 18 * T + 2 * T * T
        e6 = 9 - 18 * T + T * T
        root, ok = _sqrt_flagged(72 + e6 * l2)
        return (math.log(9 * (1 - l2) / (9 - e5 * l2 - 2 * T * lam * root)) if ok else math.nan, ok)
    raise UnsupportedFormulaError(f"no one-vs-two entanglement form for scenario {scenario}")


def _steering_pair_to_single(scenario: int, lam: float, T: float) -> tuple[float, bool]:
    """S(ij -> k) under the five scenarios."""
    l2 = lam * lam
    if scenario == 1:
        return math.log((9 - l2) / (9 - (1 - 4 * T) ** 2 * l2)), True
    if scenario == 2:
        num = 9 - 2 * (5 - 8 * T + 8 * T * T) * l2 + l2 * l2
        return math.log(num / ((1 - l2) * (9 - (1 - 4 * T) ** 2 * l2))), True
    if scenario == 3:
        return math.log((9 - (3 - 2 * T) ** 2 * l2) / (9 - (1 + 2 * T) ** 2 * l2)), True
    if scenario == 4:
        num = 9 - 2 * (5 - 8 * T + 8 * T * T) * l2 + l2 * l2
        den = 9 - 2 * (5 - 16 * T + 20 * T * T) * l2 + (1 - 4 * T * T) ** 2 * l2 * l2
        return math.log(num / den), True
    if scenario == 5:
        return math.log((9 - (3 - 2 * T) ** 2 * l2) / (9 - (3 - 6 * T) ** 2 * l2)), True
    raise UnsupportedFormulaError(f"no pair->single steering form for scenario {scenario}")


def _s4_single_to_pair_radical(lam: float, T: float) -> float:
    l2 = lam * lam
    v2 = 4 * T**8 * l2 * l2 - 16 * T**7 * l2 * l2
    v3 = (1 - l2) ** 2 - 4 * T**6 * l2 * (3 - 7 * l2) + T**5 * l2 * (60 - 52 * l2)
    v4 = T * (-7 + 18 * l2 - 11 * l2 * l2) - 4 * T**3 * (6 - 29 * l2 + 23 * l2 * l2)
    v5 = T * T * (22 - 64 * l2 + 46 * l2 * l2) + T**4 * (9 - 118 * l2 + 93 * l2 * l2)
    return v2 + v3 + v4 + v5


def _steering_single_to_pair(scenario: int, lam: float, T: float, printed: bool = False) -> tuple[float, bool]:
    """S(k -> ij) under the five scenarios.  The scenario-4 quartic
    coefficient is corrected to 5 - 20T + 28T^2 - 16T^3 + 8T^4 (the
    as-published 5 - 50T + 28T^2 + 16T^3 + 8T^4 does not reduce to the
    lossless form at T = 1); the radical is as published."""
    l2 = lam * lam
    if scenario == 1:
        return math.log((9 - (3 - 4 * T) ** 2 * l2) / (9 - (1 - 4 * T) ** 2 * l2)), True
    if scenario == 2:
        x1 = 4 * T * l2 * (1 + l2 - 2 * T)
        x2 = (1 - l2) * (9 - l2) + 4 * T**3 - 4 * T * T * (1 + l2) - 4 * T * (2 - 3 * l2)
        root, ok = _sqrt_flagged(T * x2)
        if not ok:
            return math.nan, False
        base = (1 - l2) * (9 - l2)
        return math.log(base / (base + x1 - 4 * l2 * root)), True
    if scenario == 3:
        return math.log((9 - l2) / (9 - (1 + 2 * T) ** 2 * l2)), True
    if scenario == 4:
        if printed:
            v0 = 5 - 50 * T + 28 * T * T + 16 * T**3 + 8 * T**4
        else:
            v0 = 5 - 20 * T + 28 * T * T - 16 * T**3 + 8 * T**4
        v1 = 7 - 14 * T + 14 * T * T
        root, ok = _sqrt_flagged(_s4_single_to_pair_radical(lam, T))
        if not ok:
            return math.nan, False
        num = (1 - l2) * (9 - (3 - 4 * T) ** 2 * l2)
        den = 9 + v0 * l2 * l2 - 2 * l2 * (v1 + 2 * root)
        return math.log(num / den), True
    if scenario == 5:
        return math.log((9 - (3 - 4 * T) ** 2 * l2) / (9 - (3 - 6 * T) ** 2 * l2)), True
    raise UnsupportedFormulaError(f"no single->pair steering form for scenario {scenario}")


def _pair_transmissivities(mid: MeasureId, T: float) -> tuple[float, float]:
    """Transmissivities of (party_a mode, party_b mode) under the measure's
    scenario with default roles."""
    cfg = scenario_config(Scenario(mid.scenario, T)) if mid.scenario else LossConfig.lossless()
    ts = cfg.transmissivities
    return ts[MODE_INDEX[mid.party_a[0]]], ts[MODE_INDEX[mid.party_b[0]]]


def formula_status(mid: MeasureId) -> str:
    """Catalogue status for the measure's closed form; raises
    UnsupportedFormulaError when no closed form is catalogued."""
    single, pair = _classify_split(mid)
    if mid.kind == "E":
        if single is None:  # pair measure
            if mid.scenario is None:
                return VERIFIED
            ta, tb = _pair_transmissivities(mid, 0.5)
            if ta < 1 and tb < 1:
                return CORRECTED  # both-lossy pair form
            return VERIFIED
        if mid.scenario in (2, 4):
            return UNRELIABLE
        return VERIFIED
    # steering
    if single is None:
        return CORRECTED  # pairwise conditional eigenvalue form
    if mid.scenario == 4 and mid.party_a == (single,):
        return CORRECTED
    return VERIFIED


def _classify_split(mid: MeasureId) -> tuple[str | None, tuple[str, ...] | None]:
    """Return (single_mode, pair) for a 1-vs-2 split, (None, None) for a
    pair measure.  Validates that lossy closed forms are only requested for
    the split the catalogue covers (single mode = c, default roles)."""
    parties = (mid.party_a, mid.party_b)
    sizes = sorted(len(p) for p in parties)
    if sizes == [1, 1]:
        return None, None
    single = parties[0] if len(parties[0]) == 1 else parties[1]
    pair = parties[1] if len(parties[0]) == 1 else parties[0]
    if mid.scenario is not None and single[0] != "c":
        raise UnsupportedFormulaError(
            f"closed forms under loss are catalogued for the split against mode c, not {mid}"
        )
    return single[0], pair


def reference_formula(mid: MeasureId, lam: float, T: float = 1.0) -> FormulaValue:
    """Evaluate the catalogued closed form for a measure, pre-clamp.

    ``T`` is the shared transmissivity of the measure's scenario; ignored
    (must be 1) for ideal measures.  Raises UnsupportedFormulaError for
    measures without a catalogued form; for ``unreliable`` forms use
    ``printed_formula`` explicitly.
    """
    status = formula_status(mid)
    if status == UNRELIABLE:
        raise UnsupportedFormulaError(
            f"closed form for {mid} is catalogued as unreliable; use the numeric "
            "pipeline (or printed_formula to inspect the as-published expression)"
        )
    return _evaluate(mid, lam, T, printed=False, status=status)


def printed_formula(mid: MeasureId, lam: float, T: float = 1.0) -> FormulaValue:
    """Evaluate the as-published transcription (including known-erroneous
    ones) — used by the verification suite to demonstrate errata."""
    return _evaluate(mid, lam, T, printed=True, status=formula_status(mid))


def _evaluate(mid: MeasureId, lam: float, T: float, printed: bool, status: str) -> FormulaValue:
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"lambda must lie in [0, 1), got {lam}")
    if not 0.0 <= T <= 1.0:
        raise DomainError(f"T must lie in [0, 1], got {T}")
    single, _pair = _classify_split(mid)
    scenario = mid.scenario
    if scenario is None or T == 1.0:
        if mid.kind == "E":
            val = ideal_pair_entanglement(lam) if single is None else ideal_one_vs_two_entanglement(lam)
            return FormulaValue(val, True, status)
        if single is None:
            nu = (_printed_pair_conditional_eigenvalue if printed else pair_conditional_eigenvalue)(
                lam, 1.0, 1.0
            )
            return FormulaValue(-2.0 * math.log(2.0 * nu), True, status)
        return FormulaValue(ideal_one_vs_two_steering(lam), True, status)

    if mid.kind == "E":
        if single is None:
            ta, tb = _pair_transmissivities(mid, T)
            if ta == 1.0 and tb == 1.0:
                return FormulaValue(ideal_pair_entanglement(lam), True, status)
            if ta < 1.0 and tb < 1.0:
                fn = _printed_pair_entanglement_both_lossy if printed else _pair_entanglement_both_lossy
                return FormulaValue(fn(lam, T), True, status)
            val, ok = _pair_entanglement_one_lossy(lam, T)
            return FormulaValue(val, ok, status)
        val, ok = _tri_entanglement(scenario, lam, T)
        return FormulaValue(val, ok, status)

    # steering
    if single is None:
        ta, tb = _pair_transmissivities(mid, T)
        fn = _printed_pair_conditional_eigenvalue if printed else pair_conditional_eigenvalue
        nu = fn(lam, ta, tb)
        return FormulaValue(-2.0 * math.log(2.0 * nu), True, status)
    if mid.party_a == (single,):
        val, ok = _steering_single_to_pair(scenario, lam, T, printed=printed and scenario == 4)
    else:
        val, ok = _steering_pair_to_single(scenario, lam, T)
    return FormulaValue(val, ok, status)


# ---------------------------------------------------------------------------
# report container

@dataclass(frozen=True)
class CorrelationReport:
    """All measure values for one (lambda, loss configuration) point."""

    lam: float
    loss: LossConfig
    scenario: Scenario | None
    measures: dict[str, float]
    closed_forms: dict[str, float | None]
    monogamy: dict[str, tuple[float, float]]
    region: str
