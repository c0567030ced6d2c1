"""Linear-algebra kernel for covariance matrices of Gaussian states.

Conventions used throughout the package:

* quadratures x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
  so the vacuum has variance 1/2 per quadrature;
* mode ordering (x_1, p_1, ..., x_n, p_n);
* the symplectic form is the direct sum of n copies of [[0, 1], [-1, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericError, SingularBlockError

PHYSICALITY_TOL = 1e-10
PAIRING_RTOL = 1e-9


@dataclass(frozen=True)
class ModePartition:
    """Ordered bipartition of mode indices: party_a steers / is transposed
    against party_b.  Both parties must be nonempty and disjoint."""

    party_a: tuple[int, ...]
    party_b: tuple[int, ...]

    def __post_init__(self):
        a, b = tuple(self.party_a), tuple(self.party_b)
        object.__setattr__(self, "party_a", a)
        object.__setattr__(self, "party_b", b)
        if not a or not b:
            raise ValueError("both parties must be nonempty")
        if set(a) & set(b):
            raise ValueError(f"parties overlap: {a} and {b}")

    @property
    def modes(self) -> tuple[int, ...]:
        return self.party_a + self.party_b

    def validate(self, n_modes: int) -> None:
        for m in self.modes:
            if not 0 <= m < n_modes:
                raise IndexError(f"mode index {m} out of range for {n_modes} modes")


def _check_cm(V: np.ndarray) -> int:
    """Return the mode count of V, raising on bad shape."""
    V = np.asarray(V)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise DimensionError(f"covariance matrix must be square, got shape {V.shape}")
    if V.shape[0] % 2 != 0:
        raise DimensionError(f"covariance matrix must have even dimension, got {V.shape[0]}")
    return V.shape[0] // 2


def symmetrize(V: np.ndarray) -> np.ndarray:
    """(V + V^T)/2 — absorbs floating-point drift from constructors."""
    V = np.asarray(V, dtype=float)
    _check_cm(V)
    return (V + V.T) / 2


def symplectic_form(n_modes: int) -> np.ndarray:
    """Direct sum of n copies of [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise ValueError("n_modes must be positive")
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(V: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, sorted ascending.

    These are the moduli of the eigenvalues of i*Omega*V; each modulus
    appears twice in the raw spectrum and is returned once.  A pure
    Gaussian state has all values equal to 1/2.
    """
    V = np.asarray(V, dtype=float)
    n = _check_cm(V)
    omega = symplectic_form(n)
    try:
        raw = np.linalg.eigvals(1j * omega @ V)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue solve failed for matrix:\n{V}") from exc
    mods = np.sort(np.abs(raw))
    lo, hi = mods[0::2], mods[1::2]
    scale = max(1.0, float(mods[-1]))
    if np.any(np.abs(hi - lo) > PAIRING_RTOL * scale):
        raise NumericError(
            f"symplectic spectrum does not pair up (+nu/-nu): {mods} for matrix:\n{V}"
        )
    return (lo + hi) / 2


def partial_transpose(V: np.ndarray, transposed_modes) -> np.ndarray:
    """Flip the sign of the p quadrature of each listed mode: P V P.

    Involutive; models transposition of those modes' density operator.
    """
    V = np.asarray(V, dtype=float)
    n = _check_cm(V)
    modes = tuple(transposed_modes)
    if not modes:
        raise IndexError("transposed_modes must be nonempty")
    signs = np.ones(2 * n)
    for m in modes:
        if not 0 <= m < n:
            raise IndexError(f"mode index {m} out of range for {n} modes")
        signs[2 * m + 1] = -1.0
    return V * np.outer(signs, signs)


def reduced_cm(V: np.ndarray, modes) -> np.ndarray:
    """Covariance matrix of the reduced state on the given modes (in order)."""
    V = np.asarray(V, dtype=float)
    n = _check_cm(V)
    idx = []
    for m in modes:
        if not 0 <= m < n:
            raise IndexError(f"mode index {m} out of range for {n} modes")
        idx += [2 * m, 2 * m + 1]
    return V[np.ix_(idx, idx)]


def schur_complement(V: np.ndarray, partition: ModePartition) -> np.ndarray:
    """Conditional covariance matrix of party_b after Gaussian measurements
    on party_a: V_B - V_C^T V_A^{-1} V_C, where V_C is the upper-right block
    coupling A to B.
    """
    V = np.asarray(V, dtype=float)
    n = _check_cm(V)
    partition.validate(n)
    Vr = reduced_cm(V, partition.modes)
    na = 2 * len(partition.party_a)
    A = Vr[:na, :na]
    B = Vr[na:, na:]
    C = Vr[:na, na:]
    det_a = np.linalg.det(A)
    scale = max(1.0, float(np.abs(A).max())) ** A.shape[0]
    if abs(det_a) <= 1e-14 * scale:
        raise SingularBlockError(
            f"block of steering party {partition.party_a} is singular (det={det_a:g})"
        )
    return symmetrize(B - C.T @ np.linalg.solve(A, C))


def is_physical(V: np.ndarray, tol: float = PHYSICALITY_TOL) -> bool:
    """Bona-fide condition V + i*Omega/2 >= 0, i.e. all symplectic
    eigenvalues >= 1/2 (up to tol)."""
    return bool(symplectic_eigenvalues(V)[0] >= 0.5 - tol)
