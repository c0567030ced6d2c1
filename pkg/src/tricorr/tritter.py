"""Construction of the three-mode state: two-mode squeezed vacuum on modes
a, b mixed with a coherent state on mode c by a balanced three-port splitter.

Two equivalent constructions of the output covariance matrix are provided:
the closed form (``ideal_output_cm``, cross-checked entrywise against the
element table in ``golden_cm_elements``) and the numeric route
(``output_cm_via_transform``) that conjugates the input covariance matrix
with the symplectic embedding of the splitter unitary.

Frozen sign/phase convention: the two-mode squeezer correlates x_a with x_b
(positive sign) and the splitter's off-diagonal phase is e^{-2*pi*i/3}.
This is the unique choice (among the sign/conjugation candidates) for which
the transform route reproduces the closed-form element table; see the tests.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .symplectic import symmetrize

MODE_LABELS = ("a", "b", "c")
MODE_INDEX = {"a": 0, "b": 1, "c": 2}


def _validate_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"squeezing parameter lambda must lie in [0, 1), got {lam}")
    return lam


@dataclass(frozen=True)
class InputSpec:
    """Input state parameters: squeezing (as lambda = tanh r) and the
    coherent amplitude on mode c.

    Exactly one of ``lam`` or ``r`` may be given; if both are given they
    must agree via lam = tanh(r).
    """

    lam: float | None = None
    r: float | None = None
    gamma: complex = 0j

    def __post_init__(self):
        lam, r = self.lam, self.r
        if lam is None and r is None:
            raise ValueError("give either lam or r")
        if r is not None:
            if r < 0:
                raise DomainError(f"squeezing r must be >= 0, got {r}")
            lam_from_r = float(np.tanh(r))
            if lam is None:
                lam = lam_from_r
            elif abs(lam - lam_from_r) > 1e-12:
                raise ValueError(f"inconsistent squeezing: lam={lam} but tanh(r)={lam_from_r}")
        lam = _validate_lambda(lam)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "r", float(np.arctanh(lam)))
        object.__setattr__(self, "gamma", complex(self.gamma))


def tritter_unitary() -> np.ndarray:
    """Balanced three-port splitter: (1/sqrt(3)) * [[1, w, w], [w, 1, w],
    [w, w, 1]] with w = e^{-2*pi*i/3} (frozen convention, see module doc).

    Every entry has squared modulus 1/3.
    """
    w = cmath.exp(-2j * cmath.pi / 3)
    return np.array([[1, w, w], [w, 1, w], [w, w, 1]]) / np.sqrt(3)


def unitary_to_symplectic(U: np.ndarray) -> np.ndarray:
    """Embed a passive (photon-number conserving) unitary as an orthogonal
    symplectic matrix in (x_1, p_1, ..., x_n, p_n) ordering.

    Each entry U_jk becomes the 2x2 block [[Re, -Im], [Im, Re]].
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {U.shape}")
    n = U.shape[0]
    if np.abs(U @ U.conj().T - np.eye(n)).max() > 1e-10:
        raise ValidationError("matrix is not unitary to 1e-10")
    S = np.zeros((2 * n, 2 * n))
    S[0::2, 0::2] = U.real
    S[0::2, 1::2] = -U.imag
    S[1::2, 0::2] = U.imag
    S[1::2, 1::2] = U.real
    return S


def input_cm(spec: InputSpec) -> np.ndarray:
    """Covariance matrix of TMSV(a, b) x coherent(c).

    The TMSV block is (1/2) [[cosh(2r) I, sinh(2r) D], [sinh(2r) D,
    cosh(2r) I]] with D = diag(+1, -1); the coherent mode carries plain
    vacuum noise.
    """
    lam = _validate_lambda(spec.lam)
    c2 = (1 + lam**2) / (1 - lam**2)  # cosh 2r
    s2 = 2 * lam / (1 - lam**2)  # sinh 2r
    V = np.eye(6) / 2
    V[0, 0] = V[1, 1] = V[2, 2] = V[3, 3] = c2 / 2
    V[0, 2] = V[2, 0] = s2 / 2
    V[1, 3] = V[3, 1] = -s2 / 2
    return V


def _block(xx, xp, px, pp):
    return np.array([[xx, xp], [px, pp]])


def ideal_output_cm(lam: float) -> np.ndarray:
    """Closed-form output covariance matrix: I_6/2 plus 1/(1 - lambda^2)
    times quadratic-in-lambda correction blocks.

    Matches ``golden_cm_elements`` entrywise; note the x-p correlation of
    mode c carries the opposite sign to modes a and b.
    """
    lam = _validate_lambda(lam)
    s3 = np.sqrt(3.0)
    V_ab_diag = lam / 3 * _block(2 * lam - 1, -s3, -s3, 2 * lam + 1)
    V_c_diag = lam / 3 * _block(2 * lam - 1, s3, s3, 2 * lam + 1)
    V_12 = lam / 6 * _block(1 - 2 * lam, s3, s3, -1 - 2 * lam)
    V_13 = lam / 6 * _block(lam - 2, -s3 * lam, s3 * lam, lam + 2)
    M = np.zeros((6, 6))
    M[0:2, 0:2] = V_ab_diag
    M[2:4, 2:4] = V_ab_diag
    M[4:6, 4:6] = V_c_diag
    M[0:2, 2:4] = V_12
    M[2:4, 0:2] = V_12.T
    M[0:2, 4:6] = V_13
    M[4:6, 0:2] = V_13.T
    M[2:4, 4:6] = V_13
    M[4:6, 2:4] = V_13.T
    return symmetrize(np.eye(6) / 2 + M / (1 - lam**2))


def golden_cm_elements(lam: float) -> dict[tuple[str, str], float]:
    """Golden element table: all 21 distinct covariance-matrix entries by
    quadrature-pair label, e.g. ('x_a', 'p_b').  Used as the reference that
    ``ideal_output_cm`` and ``output_cm_via_transform`` are tested against.
    """
    lam = _validate_lambda(lam)
    s3 = np.sqrt(3.0)
    d = 1 - lam**2
    el: dict[tuple[str, str], float] = {}
    for i in MODE_LABELS:
        el[(f"x_{i}", f"x_{i}")] = (3 - 2 * lam + lam**2) / (6 * d)
        el[(f"p_{i}", f"p_{i}")] = (3 + 2 * lam + lam**2) / (6 * d)
    for i in ("a", "b"):
        el[(f"x_{i}", f"p_{i}")] = -s3 * lam / (3 * d)
    el[("x_c", "p_c")] = s3 * lam / (3 * d)
    for i in ("a", "b"):
        el[(f"p_{i}", f"x_c")] = s3 * lam**2 / (6 * d)
        el[(f"x_{i}", f"p_c")] = -s3 * lam**2 / (6 * d)
        el[(f"p_{i}", f"p_c")] = lam * (lam + 2) / (6 * d)
        el[(f"x_{i}", f"x_c")] = lam * (lam - 2) / (6 * d)
    el[("p_a", "p_b")] = -lam * (1 + 2 * lam) / (6 * d)
    el[("x_a", "x_b")] = lam * (1 - 2 * lam) / (6 * d)
    el[("x_a", "p_b")] = s3 * lam / (6 * d)
    el[("x_b", "p_a")] = s3 * lam / (6 * d)
    return el


def quadrature_index(label: str) -> int:
    """Map a quadrature label like 'x_b' to its row in the 6x6 matrix."""
    quad, mode = label.split("_")
    return 2 * MODE_INDEX[mode] + (0 if quad == "x" else 1)


def cm_from_elements(elements: dict[tuple[str, str], float]) -> np.ndarray:
    """Assemble a 6x6 covariance matrix from a labeled element map;
    unlisted entries are zero."""
    V = np.zeros((6, 6))
    for (la, lb), val in elements.items():
        i, j = quadrature_index(la), quadrature_index(lb)
        V[i, j] = V[j, i] = val
    return V


def output_cm_via_transform(spec: InputSpec) -> np.ndarray:
    """Numeric route: S V_in S^T with S the symplectic embedding of the
    splitter unitary.  Independent cross-check of ``ideal_output_cm``;
    does not depend on gamma."""
    S = unitary_to_symplectic(tritter_unitary())
    return symmetrize(S @ input_cm(spec) @ S.T)


def first_moments(spec: InputSpec) -> np.ndarray:
    """Quadrature means of the output state; linear in gamma and the only
    place gamma enters the Gaussian description."""
    amps = tritter_unitary() @ np.array([0, 0, spec.gamma], dtype=complex)
    means = np.zeros(6)
    means[0::2] = np.sqrt(2.0) * amps.real
    means[1::2] = np.sqrt(2.0) * amps.imag
    return means
