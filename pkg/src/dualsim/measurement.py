"""Projective measurements with an explicit, seedable generator.

Randomness comes from ``numpy.random.Generator`` on the PCG64 bit generator.
Outcomes are drawn by inverting the cumulative distribution with uniform
doubles, which keeps streams identical across platforms and numpy releases.
Independent streams for parallel work come from ``SeedSequence.spawn``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, InvalidProjectors, ZeroProbabilityBranch
from .hilbert import as_matrix, is_hermitian, mat_close, Tolerance
from .states import DensityMatrix, make_density

PROJ_TOL = Tolerance(1e-9, 1e-9)


@dataclass(frozen=True, eq=False)
class ProjectorSet:
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        ps = tuple(as_matrix(p) for p in self.projectors)
        if not ps:
            raise InvalidProjectors("empty projector set")
        d = ps[0].shape[0]
        if any(p.shape != (d, d) for p in ps):
            raise InvalidProjectors("projectors have different dimensions")
        for k, p in enumerate(ps):
            if not is_hermitian(p, PROJ_TOL) or not mat_close(p @ p, p, PROJ_TOL):
                raise InvalidProjectors(f"projector {k} is not a hermitian idempotent")
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                if np.max(np.abs(ps[i] @ ps[j])) > 1e-9:
                    raise InvalidProjectors(f"projectors {i} and {j} are not orthogonal")
        if not mat_close(sum(ps), np.eye(d), PROJ_TOL):
            raise InvalidProjectors("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", ps)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def __len__(self):
        return len(self.projectors)

    @classmethod
    def computational(cls, dim: int) -> ProjectorSet:
        ps = []
        for k in range(dim):
            p = np.zeros((dim, dim), dtype=complex)
            p[k, k] = 1.0
            ps.append(p)
        return cls(tuple(ps))

    @classmethod
    def from_eigenbasis(cls, vectors) -> ProjectorSet:
        """Rank-one projectors onto the columns of a unitary matrix."""
        v = as_matrix(vectors)
        return cls(tuple(np.outer(v[:, k], np.conj(v[:, k])) for k in range(v.shape[1])))


def make_rng(seed) -> np.random.Generator:
    """Accepts an int seed, a ``SeedSequence`` or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(base_seed: int, n: int) -> list[int]:
    """Deterministic child seeds, one per parallel run."""
    children = np.random.SeedSequence(base_seed).spawn(n)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def born_probabilities(rho: DensityMatrix, ps: ProjectorSet) -> np.ndarray:
    if ps.dim != rho.dim:
        raise DimMismatch(f"projectors of dim {ps.dim}, state of dim {rho.dim}")
    probs = np.array([np.real(np.sum(rho.mat * p.T)) for p in ps.projectors])
    if np.any(probs < -1e-9):
        raise InvalidProjectors(f"negative probability {probs.min():.3e}")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sample_indices(probs, n: int, rng) -> np.ndarray:
    """``n`` outcome indices drawn from ``probs`` by CDF inversion."""
    rng = make_rng(rng)
    cdf = np.cumsum(np.asarray(probs, dtype=float))
    cdf /= cdf[-1]
    u = rng.random(n)
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)


def sample_frequencies(probs, n: int, rng) -> np.ndarray:
    idx = sample_indices(probs, n, rng)
    return np.bincount(idx, minlength=len(probs)) / n


def projective_measure(rho: DensityMatrix, ps: ProjectorSet, rng) -> tuple[int, DensityMatrix]:
    """Sample an outcome and return it with the normalised post-measurement state."""
    probs = born_probabilities(rho, ps)
    k = int(sample_indices(probs, 1, rng)[0])
    p = ps.projectors[k]
    weight = probs[k]
    if weight <= 0:
        raise ZeroProbabilityBranch(f"outcome {k} has zero probability")
    post = p @ rho.mat @ p
    post = post / np.real(np.trace(post))
    return k, make_density(post)
