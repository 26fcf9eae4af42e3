"""Evolution of states and observables on a finite index set.

Classical transitions relabel basis points (``rho' = P rho P^T``); quantum
evolution conjugates by a unitary. Observables move in the Heisenberg picture
as ``A(t) = U^dagger A U`` with ``U = exp(-i H t / hbar)``, which solves
``dA/dt = (i hbar)^-1 [A, H]`` for time-independent ``A`` and ``H``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch
from .hilbert import DEFAULT_TOL, Tolerance, dagger, require_unitary, unitary_from_hamiltonian
from .observables import Observable, make_observable
from .states import DensityMatrix, make_density


@dataclass(frozen=True)
class PermutationMap:
    """Bijection on ``0..dim-1``: basis point ``i`` moves to ``targets[i]``."""

    targets: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(i) for i in self.targets)
        if sorted(t) != list(range(len(t))):
            raise ValueError(f"targets {t} are not a permutation of 0..{len(t) - 1}")
        object.__setattr__(self, "targets", t)

    @property
    def dim(self) -> int:
        return len(self.targets)

    @classmethod
    def identity(cls, dim: int) -> PermutationMap:
        return cls(tuple(range(dim)))

    @classmethod
    def swap(cls, i: int, j: int, dim: int) -> PermutationMap:
        t = list(range(dim))
        t[i], t[j] = t[j], t[i]
        return cls(tuple(t))

    @classmethod
    def cycle(cls, dim: int, shift: int = 1) -> PermutationMap:
        return cls(tuple((i + shift) % dim for i in range(dim)))

    def then(self, other: PermutationMap) -> PermutationMap:
        """Apply ``self`` first, then ``other``."""
        if other.dim != self.dim:
            raise DimMismatch("permutations act on different index sets")
        return PermutationMap(tuple(other.targets[t] for t in self.targets))

    def inverse(self) -> PermutationMap:
        inv = [0] * self.dim
        for i, t in enumerate(self.targets):
            inv[t] = i
        return PermutationMap(tuple(inv))

    def matrix(self) -> np.ndarray:
        p = np.zeros((self.dim, self.dim), dtype=complex)
        p[list(self.targets), list(range(self.dim))] = 1.0
        return p


def apply_permutation(rho: DensityMatrix, perm: PermutationMap) -> DensityMatrix:
    """``P rho P^T`` computed by relabelling indices, so entries are moved, never summed."""
    if perm.dim != rho.dim:
        raise DimMismatch(f"permutation on {perm.dim} points, state of dim {rho.dim}")
    src = perm.inverse().targets
    out = rho.mat[np.ix_(src, src)].copy()
    return DensityMatrix(out)


def apply_unitary(rho: DensityMatrix, u, tol: Tolerance = DEFAULT_TOL) -> DensityMatrix:
    u = require_unitary(u, tol)
    if u.shape[0] != rho.dim:
        raise DimMismatch(f"unitary of dim {u.shape[0]}, state of dim {rho.dim}")
    return make_density(u @ rho.mat @ dagger(u), tol)


def _hamiltonian(h) -> Observable:
    return h if isinstance(h, Observable) else make_observable(h, "H")


def evolve_von_neumann(rho: DensityMatrix, h, t: float, hbar: float = 1.0) -> DensityMatrix:
    """Schrodinger-picture state at time ``t``."""
    h = _hamiltonian(h)
    if h.dim != rho.dim:
        raise DimMismatch(f"hamiltonian of dim {h.dim}, state of dim {rho.dim}")
    u = unitary_from_hamiltonian(h.mat, t, hbar)
    return make_density(u @ rho.mat @ dagger(u))


def evolve_heisenberg(a: Observable, h, t: float, hbar: float = 1.0) -> Observable:
    """Heisenberg-picture observable at time ``t``; the state stays put."""
    a = make_observable(a)
    h = _hamiltonian(h)
    if h.dim != a.dim:
        raise DimMismatch(f"hamiltonian of dim {h.dim}, observable of dim {a.dim}")
    u = unitary_from_hamiltonian(h.mat, t, hbar)
    label = f"{a.label}(t={t:g})" if a.label else ""
    return make_observable(dagger(u) @ a.mat @ u, label)


def heisenberg_rhs(a: Observable, h, hbar: float = 1.0) -> np.ndarray:
    """Right-hand side ``(i hbar)^-1 [A, H]`` of the observable equation of motion."""
    h = _hamiltonian(h)
    return (a.mat @ h.mat - h.mat @ a.mat) / (1j * hbar)


def apply_stochastic(rho: DensityMatrix, transition) -> DensityMatrix:
    """Push a diagonal (classical) state through a column-stochastic matrix.

    This is a Markov step on the classical probabilities; it is not unitary and
    only accepts diagonal input.
    """
    m = np.asarray(transition, dtype=float)
    if m.shape != (rho.dim, rho.dim):
        raise DimMismatch(f"transition of shape {m.shape}, state of dim {rho.dim}")
    if np.any(m < 0) or not np.allclose(m.sum(axis=0), 1.0, rtol=0, atol=1e-12):
        raise ValueError("transition matrix is not column-stochastic")
    d = rho.mat
    if np.any(d - np.diag(np.diag(d))):
        raise ValueError("stochastic maps act on diagonal states only")
    return DensityMatrix(np.diag(m @ np.real(np.diag(d))).astype(complex))
