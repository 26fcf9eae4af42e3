"""Hermitian observables, expectations, spreads and the Robertson bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, EmptyList, NonFinite, NonRealExpectation
from .hilbert import DEFAULT_TOL, Tolerance, commutator, dagger, require_hermitian
from .states import DensityMatrix

IMAG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Observable:
    mat: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.mat.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def is_diagonal(self) -> bool:
        m = self.mat
        return not np.any(m - np.diag(np.diag(m)))

    def __repr__(self):
        return f"Observable({self.label or '?'}, dim={self.dim})"


def make_observable(m, label: str = "", tol: Tolerance = DEFAULT_TOL) -> Observable:
    if isinstance(m, Observable):
        return m
    m = require_hermitian(m, tol)
    return Observable(0.5 * (m + dagger(m)), label)


def diagonal_observable(values, label: str = "") -> Observable:
    """Classical observable: the sampled function values sit on the diagonal."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise EmptyList("need at least one value")
    if not np.all(np.isfinite(v)):
        raise NonFinite("observable values must be finite")
    return Observable(np.diag(v).astype(complex), label)


def _check_dims(rho: DensityMatrix, *obs: Observable):
    for a in obs:
        if a.dim != rho.dim:
            raise DimMismatch(f"state has dim {rho.dim}, observable {a.label!r} has dim {a.dim}")


def _trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    # trace(a @ b) without forming the product
    return complex(np.sum(a * b.T))


def expectation(rho: DensityMatrix, a: Observable) -> float:
    _check_dims(rho, a)
    val = _trace_product(rho.mat, a.mat)
    if abs(val.imag) > IMAG_TOL:
        raise NonRealExpectation(f"trace(rho A) has imaginary part {val.imag:.3e}")
    return val.real


def variance(rho: DensityMatrix, a: Observable) -> float:
    """``<(A - <A>)^2>``, clamped to zero when rounding makes it slightly negative."""
    mean = expectation(rho, a)
    centred = a.mat - mean * np.eye(a.dim)
    var = _trace_product(rho.mat, centred @ centred).real
    return max(var, 0.0)


def robertson_check(rho: DensityMatrix, a: Observable, b: Observable) -> tuple[float, float, bool]:
    """Return ``(dA * dB, |<[A, B]>| / 2, holds)``."""
    _check_dims(rho, a, b)
    lhs = math.sqrt(variance(rho, a)) * math.sqrt(variance(rho, b))
    rhs = abs(_trace_product(rho.mat, commutator(a.mat, b.mat))) / 2
    return lhs, rhs, lhs >= rhs - 1e-9


def bloch_observable(theta: float, label: str = "") -> Observable:
    """Spin component ``cos(theta) Z + sin(theta) X`` in the x-z plane."""
    c, s = math.cos(theta), math.sin(theta)
    return Observable(np.array([[c, s], [s, -c]], dtype=complex), label or f"A({theta:g})")
