"""Dense complex linear algebra kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here is
pure: inputs are never modified and fresh arrays are returned.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NonFinite, NotHermitian, NotUnitary


@dataclass(frozen=True)
class Tolerance:
    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self):
        if not (self.abs > 0 and self.rel > 0):
            raise ValueError("tolerances must be positive")

    def bound(self, *mats) -> float:
        scale = max((max_norm(m) for m in mats), default=0.0)
        return self.abs + self.rel * scale


DEFAULT_TOL = Tolerance()

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite square complex matrix."""
    a = np.array(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has NaN or infinite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def max_norm(m) -> float:
    """Largest absolute entry."""
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def check_same_dim(*mats):
    dims = {np.shape(m) for m in mats}
    if len(dims) != 1:
        raise DimMismatch(f"dimension mismatch: {sorted(dims)}")


def mat_close(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the max-entry distance is within ``tol.abs + tol.rel * max(|a|, |b|)``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimMismatch(f"cannot compare shapes {a.shape} and {b.shape}")
    return max_norm(a - b) <= tol.bound(a, b)


def is_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return max_norm(m - dagger(m)) <= tol.bound(m)


def is_unitary(u, tol: Tolerance = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    return mat_close(dagger(u) @ u, np.eye(u.shape[0]), tol)


def require_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise NotHermitian(f"||H - H^dagger|| = {max_norm(m - dagger(m)):.3e} exceeds tolerance")
    return m


def require_unitary(u, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    u = as_matrix(u)
    if not is_unitary(u, tol):
        raise NotUnitary("U^dagger U deviates from the identity")
    return u


def eig_hermitian(h, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and a unitary matrix of column eigenvectors.

    The eigenvector phases are whatever LAPACK returns; callers must not rely on them.
    """
    h = require_hermitian(h, tol)
    h = 0.5 * (h + dagger(h))
    evals, evecs = np.linalg.eigh(h)
    return evals, evecs


def unitary_from_hamiltonian(h, t: float, hbar: float = 1.0, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``exp(-i H t / hbar)`` via the spectral decomposition of ``H``."""
    if not hbar > 0:
        raise ValueError("hbar must be positive")
    evals, v = eig_hermitian(h, tol)
    phases = np.exp(-1j * evals * (t / hbar))
    return (v * phases) @ dagger(v)
