"""Density matrices and the classical subclasses living inside them.

A classical point state is a density matrix with a single 1 on the diagonal; a
classical distribution is any diagonal density matrix. Everything else is the
quantum extension.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, NegativeProbability, NonFinite, NotNormalized, NotPositive, TraceNotOne
from .hilbert import DEFAULT_TOL, Tolerance, as_matrix, dagger, require_hermitian

PSD_FLOOR = -1e-9
TRACE_TOL = 1e-9


class StateClass(enum.Enum):
    BASIS_CLASSICAL = "BasisClassical"
    DIAGONAL_CLASSICAL = "DiagonalClassical"
    PURE_QUANTUM = "PureQuantum"
    MIXED_QUANTUM = "MixedQuantum"

    @property
    def is_classical(self) -> bool:
        return self in (StateClass.BASIS_CLASSICAL, StateClass.DIAGONAL_CLASSICAL)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix. Build with :func:`make_density`, not directly."""

    mat: np.ndarray

    def __post_init__(self):
        self.mat.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def make_density(m, tol: Tolerance = DEFAULT_TOL) -> DensityMatrix:
    """Validate ``m`` and return it as a :class:`DensityMatrix`.

    The stored matrix is the hermitian part ``(m + m^dagger)/2``.
    """
    if isinstance(m, DensityMatrix):
        return m
    m = require_hermitian(m, tol)
    m = 0.5 * (m + dagger(m))
    tr = float(np.real(np.trace(m)))
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr!r}")
    lowest = float(np.linalg.eigvalsh(m)[0])
    if lowest < PSD_FLOOR:
        raise NotPositive(f"smallest eigenvalue {lowest:.3e} is negative")
    return DensityMatrix(m)


def classical_basis_state(k: int, dim: int) -> DensityMatrix:
    if dim < 1:
        raise ValueError("dim must be positive")
    if not 0 <= k < dim:
        raise IndexOutOfRange(f"index {k} outside 0..{dim - 1}")
    m = np.zeros((dim, dim), dtype=complex)
    m[k, k] = 1.0
    return DensityMatrix(m)


def classical_mixture(probs) -> DensityMatrix:
    """Diagonal density matrix carrying a probability vector."""
    p = np.asarray(probs, dtype=float).ravel()
    if p.size == 0:
        raise NotNormalized("empty probability list")
    if not np.all(np.isfinite(p)):
        raise NonFinite("probabilities must be finite")
    if np.any(p < 0):
        raise NegativeProbability(f"negative entry {p.min()!r}")
    if abs(p.sum() - 1.0) > TRACE_TOL:
        raise NotNormalized(f"probabilities sum to {p.sum()!r}")
    return DensityMatrix(np.diag(p).astype(complex))


def pure_state(psi) -> DensityMatrix:
    """Projector onto the normalised vector ``psi``."""
    v = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise NotNormalized("zero vector")
    v = v / norm
    return make_density(np.outer(v, np.conj(v)))


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def purity(rho: DensityMatrix) -> float:
    """``trace(rho^2)``; equals 1 exactly for projectors and 1/dim for the maximally mixed state."""
    m = rho.mat
    # trace(rho @ rho) for hermitian rho is the squared Frobenius norm
    return float(np.sum(np.abs(m) ** 2))


def is_diagonal(m, atol: float) -> bool:
    off = m - np.diag(np.diag(m))
    return bool(np.all(np.abs(off) <= atol))


def classify_state(rho: DensityMatrix, tol: Tolerance = DEFAULT_TOL) -> StateClass:
    """Basis -> Diagonal -> Pure -> Mixed, first match wins."""
    m = rho.mat
    if is_diagonal(m, tol.abs):
        diag = np.real(np.diag(m))
        if np.count_nonzero(np.abs(diag - 1.0) <= tol.abs) == 1:
            return StateClass.BASIS_CLASSICAL
        return StateClass.DIAGONAL_CLASSICAL
    if abs(purity(rho) - 1.0) <= tol.abs:
        return StateClass.PURE_QUANTUM
    return StateClass.MIXED_QUANTUM


def diagonal_probabilities(rho: DensityMatrix) -> np.ndarray:
    return np.real(np.diag(rho.mat)).copy()


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else make_density(as_matrix(rho))
