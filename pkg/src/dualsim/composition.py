"""Bipartite composition.

Pair index convention, used everywhere: ``(i1, i2) -> i1 * d2 + i2`` (row-major,
which is what ``numpy.kron`` produces).
"""
from __future__ import annotations

import numpy as np

from .errors import DimFactorMismatch
from .hilbert import as_matrix
from .states import DensityMatrix, make_density


def pair_index(i1: int, i2: int, d2: int) -> int:
    return i1 * d2 + i2


def tensor_operator(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_state(rho1: DensityMatrix, rho2: DensityMatrix) -> DensityMatrix:
    # kron of two validated states is a valid state; skip re-diagonalising
    return DensityMatrix(np.kron(rho1.mat, rho2.mat))


def partial_trace(rho: DensityMatrix, dims: tuple[int, int], keep: str = "first") -> DensityMatrix:
    """Reduced state of one factor of a ``d1 x d2`` bipartite state.

    ``keep`` is ``"first"`` or ``"second"``.
    """
    d1, d2 = dims
    if d1 < 1 or d2 < 1 or d1 * d2 != rho.dim:
        raise DimFactorMismatch(f"dims {dims} do not factor a state of dim {rho.dim}")
    t = rho.mat.reshape(d1, d2, d1, d2)
    if keep == "first":
        red = np.einsum("ijkj->ik", t)
    elif keep == "second":
        red = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'first' or 'second', not {keep!r}")
    return make_density(red)
