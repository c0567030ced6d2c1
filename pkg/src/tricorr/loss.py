"""Pure-loss channels acting on covariance matrices, and the five named
loss-distribution scenarios.

A channel of transmissivity T on mode i rescales every block involving i:
off-diagonal blocks V_ij -> sqrt(T_i T_j) V_ij, diagonal blocks
V_ii -> T_i V_ii + (1 - T_i) I/2 (vacuum environment).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .symplectic import _check_cm, symmetrize
from .tritter import MODE_INDEX, MODE_LABELS


@dataclass(frozen=True)
class LossConfig:
    """Per-mode transmissivities, one per output mode (T = cos^2 theta)."""

    transmissivities: tuple[float, float, float]

    def __post_init__(self):
        ts = tuple(float(t) for t in self.transmissivities)
        for t in ts:
            if not 0.0 <= t <= 1.0:
                raise DomainError(f"transmissivity must lie in [0, 1], got {t}")
        object.__setattr__(self, "transmissivities", ts)

    @classmethod
    def uniform(cls, T: float) -> "LossConfig":
        return cls((T, T, T))

    @classmethod
    def lossless(cls) -> "LossConfig":
        return cls((1.0, 1.0, 1.0))


# Which roles are lossy in each scenario: 'pair' modes are the dual-mode
# module {i, j}, 'single' is mode k.  Scenarios 2 and 4 touch only one
# member of the pair.
_SCENARIO_ROLES = {
    1: ("single",),
    2: ("pair_one",),
    3: ("pair",),
    4: ("pair_one", "single"),
    5: ("pair", "single"),
}

SCENARIO_DESCRIPTIONS = {
    1: "loss on the single mode k only",
    2: "loss on one member of the pair only",
    3: "loss on both members of the pair",
    4: "loss on one pair member and on mode k",
    5: "loss on all three modes",
}


@dataclass(frozen=True)
class Scenario:
    """A named loss distribution: scenario id 1-5, the shared transmissivity
    T of every lossy mode, the single-mode role k (default mode c) and, for
    scenarios 2 and 4, which pair member is lossy (default mode a)."""

    id: int
    shared_T: float
    single_mode: str = "c"
    lossy_pair_member: str | None = None

    def __post_init__(self):
        if self.id not in _SCENARIO_ROLES:
            raise DomainError(f"scenario id must be 1..5, got {self.id}")
        if not 0.0 <= self.shared_T <= 1.0:
            raise DomainError(f"shared_T must lie in [0, 1], got {self.shared_T}")
        if self.single_mode not in MODE_INDEX:
            raise DomainError(f"unknown mode label {self.single_mode!r}")
        if self.lossy_pair_member is None:
            object.__setattr__(
                self,
                "lossy_pair_member",
                next(m for m in MODE_LABELS if m != self.single_mode),
            )
        if self.lossy_pair_member not in MODE_INDEX:
            raise DomainError(f"unknown mode label {self.lossy_pair_member!r}")
        if self.lossy_pair_member == self.single_mode:
            raise DomainError("lossy pair member must differ from the single mode k")

    @property
    def pair(self) -> tuple[str, str]:
        return tuple(m for m in MODE_LABELS if m != self.single_mode)


def scenario_config(s: Scenario) -> LossConfig:
    """Per-mode transmissivity triple implementing the named scenario."""
    T = float(s.shared_T)
    ts = [1.0, 1.0, 1.0]
    roles = _SCENARIO_ROLES[s.id]
    if "single" in roles:
        ts[MODE_INDEX[s.single_mode]] = T
    if "pair" in roles:
        for m in s.pair:
            ts[MODE_INDEX[m]] = T
    if "pair_one" in roles:
        ts[MODE_INDEX[s.lossy_pair_member]] = T
    return LossConfig(tuple(ts))


def apply_loss(V: np.ndarray, cfg: LossConfig) -> np.ndarray:
    """Send a covariance matrix through independent pure-loss channels."""
    V = np.asarray(V, dtype=float)
    n = _check_cm(V)
    ts = cfg.transmissivities
    if n != len(ts):
        raise DomainError(f"config has {len(ts)} modes but matrix has {n}")
    root = np.repeat(np.sqrt(ts), 2)
    W = V * np.outer(root, root)
    W[np.diag_indices_from(W)] += (1 - np.repeat(ts, 2)) / 2
    return symmetrize(W)
