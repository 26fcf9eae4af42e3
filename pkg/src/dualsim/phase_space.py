"""Classical Liouville transport on a discretised (q, p) rectangle.

Arrays are indexed ``[i_q, i_p]``. Derivatives are second-order centred
differences; periodic grids wrap both axes, bounded grids use second-order
one-sided stencils at the edges.

On a periodic grid the centred bracket conserves the cell-weighted mass to
rounding, because the two discrete difference operators commute.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GridMismatch, NonFinite, NotNormalized, UnstableStep

log = logging.getLogger(__name__)

MASS_TOL = 1e-6


@dataclass(frozen=True)
class PhaseSpaceGrid:
    n_q: int
    n_p: int
    q_min: float
    q_max: float
    p_min: float
    p_max: float
    periodic: bool = True

    def __post_init__(self):
        if self.n_q < 4 or self.n_p < 4:
            raise ValueError("need at least 4 points per axis")
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("empty phase-space rectangle")

    @property
    def dq(self) -> float:
        n = self.n_q if self.periodic else self.n_q - 1
        return (self.q_max - self.q_min) / n

    @property
    def dp(self) -> float:
        n = self.n_p if self.periodic else self.n_p - 1
        return (self.p_max - self.p_min) / n

    @property
    def cell(self) -> float:
        return self.dq * self.dp

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_q, self.n_p)

    @property
    def q(self) -> np.ndarray:
        return self.q_min + self.dq * np.arange(self.n_q)

    @property
    def p(self) -> np.ndarray:
        return self.p_min + self.dp * np.arange(self.n_p)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.q, self.p, indexing="ij")

    def sample(self, func: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
        qq, pp = self.mesh()
        return np.broadcast_to(np.asarray(func(qq, pp), dtype=float), self.shape).copy()

    def d_dq(self, f: np.ndarray) -> np.ndarray:
        return _diff(f, 0, self.dq, self.periodic)

    def d_dp(self, f: np.ndarray) -> np.ndarray:
        return _diff(f, 1, self.dp, self.periodic)


def _diff(f, axis, h, periodic):
    if periodic:
        return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2 * h)
    return np.gradient(f, h, axis=axis, edge_order=2)


@dataclass(frozen=True, eq=False)
class HamiltonianField:
    """Samples of ``H(q, p)`` with their discrete gradients precomputed."""

    grid: PhaseSpaceGrid
    h_values: np.ndarray
    dh_dq: np.ndarray = field(init=False, repr=False)
    dh_dp: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        h = np.asarray(self.h_values, dtype=float)
        if h.shape != self.grid.shape:
            raise GridMismatch(f"values of shape {h.shape} on a {self.grid.shape} grid")
        if not np.all(np.isfinite(h)):
            raise NonFinite("hamiltonian samples must be finite")
        object.__setattr__(self, "h_values", h)
        object.__setattr__(self, "dh_dq", self.grid.d_dq(h))
        object.__setattr__(self, "dh_dp", self.grid.d_dp(h))

    @classmethod
    def from_function(cls, grid: PhaseSpaceGrid, func) -> HamiltonianField:
        return cls(grid, grid.sample(func))

    def max_speed(self) -> float:
        """``max(|dH/dp| / dq + |dH/dq| / dp)``, the CFL rate of the transport."""
        g = self.grid
        return float(np.max(np.abs(self.dh_dp) / g.dq + np.abs(self.dh_dq) / g.dp))


@dataclass(frozen=True, eq=False)
class PhaseSpaceDensity:
    grid: PhaseSpaceGrid
    values: np.ndarray
    clamped_mass: float = 0.0  # total negative mass removed while evolving

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise GridMismatch(f"values of shape {v.shape} on a {self.grid.shape} grid")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("density values must be finite and nonnegative")
        mass = float(v.sum()) * self.grid.cell
        if abs(mass - 1.0) > MASS_TOL:
            raise NotNormalized(f"cell-weighted mass is {mass!r}")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: PhaseSpaceGrid, func) -> PhaseSpaceDensity:
        v = grid.sample(func)
        total = v.sum() * grid.cell
        if not total > 0:
            raise NotNormalized("function has no positive mass on the grid")
        return cls(grid, v / total)

    def mass(self) -> float:
        return float(self.values.sum()) * self.grid.cell

    def mean(self, a: np.ndarray) -> float:
        return float(np.sum(self.values * a)) * self.grid.cell


def _values(a, grid):
    v = a.values if isinstance(a, PhaseSpaceDensity) else np.asarray(a, dtype=float)
    if v.shape != grid.shape:
        raise GridMismatch(f"array of shape {v.shape} on a {grid.shape} grid")
    return v


def poisson_bracket(a, h: HamiltonianField) -> np.ndarray:
    """``{a, H} = da/dq dH/dp - da/dp dH/dq`` by finite differences."""
    if isinstance(a, PhaseSpaceDensity) and a.grid != h.grid:
        raise GridMismatch("density and hamiltonian live on different grids")
    g = h.grid
    a = _values(a, g)
    return g.d_dq(a) * h.dh_dp - g.d_dp(a) * h.dh_dq


def evolve_liouville(f: PhaseSpaceDensity, h: HamiltonianField, t_final: float, dt: float) -> PhaseSpaceDensity:
    """Integrate ``df/dt = -{f, H}`` with classical RK4 up to ``t_final``.

    The step is shrunk so that an integer number of steps lands on ``t_final``.
    Negative undershoots are clamped after every step and the pre-clamp mass is
    restored; the removed mass accumulates in ``clamped_mass``.
    """
    if f.grid != h.grid:
        raise GridMismatch("density and hamiltonian live on different grids")
    if not dt > 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    rate = h.max_speed()
    if dt * rate > 1.0:
        raise UnstableStep(f"dt={dt:g} exceeds the stability bound {1.0 / rate:g}")
    if t_final == 0:
        return f

    n_steps = max(1, math.ceil(t_final / dt - 1e-12))
    step = t_final / n_steps
    g = h.grid

    def rhs(v):
        return -(g.d_dq(v) * h.dh_dp - g.d_dp(v) * h.dh_dq)

    v = f.values.copy()
    clamped = f.clamped_mass
    for _ in range(n_steps):
        k1 = rhs(v)
        k2 = rhs(v + 0.5 * step * k1)
        k3 = rhs(v + 0.5 * step * k2)
        k4 = rhs(v + step * k3)
        v = v + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        neg = v < 0
        if neg.any():
            before = v.sum()
            removed = -v[neg].sum()
            v[neg] = 0.0
            v *= before / v.sum()
            clamped += removed * g.cell
    log.debug("liouville: %d steps of %g, clamped mass %.3e", n_steps, step, clamped)
    return PhaseSpaceDensity(g, v, clamped)
