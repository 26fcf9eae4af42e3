"""Thought experiments built from the density-matrix kernel.

Every runner computes its probabilities from the apparatus model alone. Sampling
detector clicks is a separate, optional step driven by ``samples`` and ``seed``
in :func:`run_scenario`.

Conventions
-----------
Mach-Zehnder: the photon enters in mode 0. Both splitters are
``(1/sqrt2) [[1, i], [i, 1]]`` and the phase ``exp(i phase)`` sits on arm 0.
Output mode 1 is the "cross" port, output mode 0 the "bar" port; with no phase
and no obstruction every photon leaves through the cross port. A bomb on arm
``k`` swaps that arm's population into an absorber level, which is a
permutation of the four levels (mode 0, mode 1, absorber 0, absorber 1).

Double slit: far-field amplitudes ``exp(+-i pi (d/lambda) sin(theta))`` for the
left/right slit on ``n_screen`` angles spanning ``[-pi/2, pi/2]`` inclusive.
The which-path marker is a second qubit flipped by a CNOT on the right path.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable

import numpy as np

from .composition import partial_trace, tensor_operator, tensor_state
from .dynamics import PermutationMap, apply_permutation, apply_stochastic, apply_unitary
from .errors import InvalidConfig, InvalidParam, NotNormalized, UnknownScenario
from .measurement import ProjectorSet, born_probabilities, make_rng, sample_frequencies, spawn_seeds
from .observables import Observable, bloch_observable, expectation
from .states import DensityMatrix, classical_basis_state, classical_mixture, pure_state

BEAM_SPLITTER = np.array([[1, 1j], [1j, 1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class ScenarioResult:
    kind: str
    analytic: dict[str, float]
    empirical: dict[str, float] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)
    # names in ``analytic`` that together form a probability distribution
    distribution: tuple[str, ...] = ()
    # double slit only: screen angles, normalised intensity, sampled frequencies
    theta: np.ndarray | None = None
    intensity: np.ndarray | None = None
    empirical_intensity: np.ndarray | None = None


# --- Mach-Zehnder and the bomb test ---------------------------------------

def _blocked_arms(blocked_arm) -> tuple[int, ...]:
    if blocked_arm is None:
        return ()
    if blocked_arm == "both":
        return (0, 1)
    if isinstance(blocked_arm, bool) or blocked_arm not in (0, 1):
        raise InvalidParam(f"blocked_arm must be null, 0, 1 or 'both', not {blocked_arm!r}")
    return (int(blocked_arm),)


def _embed_modes(u2: np.ndarray) -> np.ndarray:
    u = np.eye(4, dtype=complex)
    u[:2, :2] = u2
    return u


def mach_zehnder_state(phase: float, blocked_arm=None) -> DensityMatrix:
    """Four-level state after the second splitter."""
    rho = classical_basis_state(0, 4)
    rho = apply_unitary(rho, _embed_modes(BEAM_SPLITTER))
    for arm in _blocked_arms(blocked_arm):
        rho = apply_permutation(rho, PermutationMap.swap(arm, 2 + arm, 4))
    rho = apply_unitary(rho, _embed_modes(np.diag([np.exp(1j * phase), 1.0])))
    return apply_unitary(rho, _embed_modes(BEAM_SPLITTER))


def run_mach_zehnder(phase: float = 0.0, blocked_arm=None) -> ScenarioResult:
    p = born_probabilities(mach_zehnder_state(phase, blocked_arm), ProjectorSet.computational(4))
    analytic = {
        "p_cross": float(p[1]),
        "p_bar": float(p[0]),
        "p_absorbed": float(p[2] + p[3]),
    }
    return ScenarioResult(
        "mach_zehnder",
        analytic,
        metadata={"params": {"phase": phase, "blocked_arm": blocked_arm}},
        distribution=("p_cross", "p_bar", "p_absorbed"),
    )


def run_bomb_test(phase: float = 0.0, blocked_arm=1) -> ScenarioResult:
    """Mach-Zehnder with an obstruction, plus the interaction-free detection rate.

    ``p_interaction_free`` is the bar-port rate when a bomb is present: a click
    there never happens in the tuned, unobstructed interferometer, so it reveals
    the bomb without the photon having been absorbed.
    """
    mz = run_mach_zehnder(phase, blocked_arm)
    analytic = dict(mz.analytic)
    analytic["p_interaction_free"] = analytic["p_bar"] if _blocked_arms(blocked_arm) else 0.0
    return replace(mz, kind="bomb_test", analytic=analytic)


# --- double slit -----------------------------------------------------------

def _path_state(open_slits: str) -> DensityMatrix:
    if open_slits == "both":
        return pure_state([1.0, 1.0])
    if open_slits == "left":
        return classical_basis_state(0, 2)
    if open_slits == "right":
        return classical_basis_state(1, 2)
    raise InvalidParam(f"open_slits must be 'left', 'right' or 'both', not {open_slits!r}")


def mark_paths(path: DensityMatrix) -> DensityMatrix:
    """Copy the path into a fresh marker qubit, then discard the marker."""
    joint = tensor_state(path, classical_basis_state(0, 2))
    # CNOT controlled by the right path: |R,0> <-> |R,1>
    joint = apply_permutation(joint, PermutationMap.swap(2, 3, 4))
    return partial_trace(joint, (2, 2), keep="first")


def screen_intensity(path: DensityMatrix, theta: np.ndarray, d_over_lambda: float) -> np.ndarray:
    """Unnormalised ``w(theta) rho w(theta)^dagger`` with ``w = (e^{ix}, e^{-ix})``."""
    x = math.pi * d_over_lambda * np.sin(theta)
    w = np.stack([np.exp(1j * x), np.exp(-1j * x)], axis=1)
    return np.real(np.einsum("jk,kl,jl->j", w, path.mat, np.conj(w)))


def visibility(intensity) -> float:
    i_max, i_min = float(np.max(intensity)), float(np.min(intensity))
    return (i_max - i_min) / (i_max + i_min)


def run_double_slit(
    n_screen: int = 201,
    d_over_lambda: float = 2.5,
    open_slits: str = "both",
    which_path_marking: bool = False,
) -> ScenarioResult:
    if n_screen < 16:
        raise InvalidParam("n_screen must be at least 16")
    if not d_over_lambda > 0:
        raise InvalidParam("d_over_lambda must be positive")
    if which_path_marking and open_slits != "both":
        raise InvalidConfig("which-path marking needs both slits open")
    path = _path_state(open_slits)
    if which_path_marking:
        path = mark_paths(path)
    theta = np.linspace(-math.pi / 2, math.pi / 2, n_screen)
    raw = screen_intensity(path, theta, d_over_lambda)
    profile = raw / raw.sum()
    return ScenarioResult(
        "double_slit",
        {"visibility": visibility(profile)},
        metadata={"params": {
            "n_screen": n_screen,
            "d_over_lambda": d_over_lambda,
            "open_slits": open_slits,
            "which_path_marking": which_path_marking,
        }},
        theta=theta,
        intensity=profile,
    )


# --- Schrodinger's cat -----------------------------------------------------

# joint levels (atom, cat), index atom * 2 + cat; atom 1 = decayed, cat 1 = dead
def cat_transition(decay_per_step: float) -> np.ndarray:
    """One step: an intact atom decays with the given probability and the cat dies with it."""
    lam = decay_per_step
    m = np.eye(4)
    m[0, 0] = 1.0 - lam
    m[3, 0] = lam
    return m


def run_cat(decay_per_step: float = 0.1, steps: int = 10) -> ScenarioResult:
    if not 0.0 <= decay_per_step <= 1.0:
        raise InvalidParam(f"decay_per_step must lie in [0, 1], got {decay_per_step!r}")
    if steps < 0:
        raise InvalidParam("steps must be nonnegative")
    m = cat_transition(decay_per_step)
    rho = classical_basis_state(0, 4)
    for _ in range(steps):
        rho = apply_stochastic(rho, m)
    p = np.real(np.diag(rho.mat))
    p_alive, p_dead = float(p[0] + p[2]), float(p[1] + p[3])

    if p[2] + p[3] == 0:
        # no decay has happened yet; condition a single forced decay step instead
        p = np.real(np.diag(apply_stochastic(classical_basis_state(0, 4), cat_transition(1.0)).mat))
    # P(dead | decayed) over the atom-decayed block
    dead_given_decay = float(p[3] / (p[2] + p[3]))

    return ScenarioResult(
        "cat",
        {
            "p_alive": p_alive,
            "p_dead": p_dead,
            "p_dead_given_decay": dead_given_decay,
        },
        metadata={"params": {"decay_per_step": decay_per_step, "steps": steps}},
        distribution=("p_alive", "p_dead"),
    )


# --- CHSH ------------------------------------------------------------------

CHSH_SETTINGS = (("ab", "a", "b"), ("abp", "a", "b_prime"), ("apb", "a_prime", "b"), ("apbp", "a_prime", "b_prime"))


def singlet() -> DensityMatrix:
    return pure_state([0.0, 1.0, -1.0, 0.0])


def bloch_state(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def product_state(theta_a=0.0, phi_a=0.0, theta_b=0.0, phi_b=0.0) -> DensityMatrix:
    return pure_state(np.kron(bloch_state(theta_a, phi_a), bloch_state(theta_b, phi_b)))


def correlator(rho: DensityMatrix, x: float, y: float) -> float:
    ab = tensor_operator(bloch_observable(x).mat, bloch_observable(y).mat)
    return expectation(rho, Observable(ab, f"A({x:g})B({y:g})"))


def chsh_value(e_ab, e_abp, e_apb, e_apbp) -> float:
    return abs(e_ab - e_abp + e_apb + e_apbp)


def deterministic_chsh_max() -> float:
    """Largest CHSH value over all 16 local deterministic +-1 assignments."""
    return max(
        chsh_value(a * b, a * bp, ap * b, ap * bp)
        for a, ap, b, bp in itertools.product((-1, 1), repeat=4)
    )


def chsh_state(state: str, params: dict) -> DensityMatrix:
    if state == "singlet":
        return singlet()
    if state == "product":
        return product_state(*(params.get(k, 0.0) for k in ("theta_a", "phi_a", "theta_b", "phi_b")))
    if state == "diagonal_classical":
        probs = [params.get(k, d) for k, d in (("p00", 0.5), ("p01", 0.0), ("p10", 0.0), ("p11", 0.5))]
        try:
            return classical_mixture(probs)
        except NotNormalized as exc:
            raise InvalidParam(f"p00..p11 must sum to 1: {exc}") from None
    raise InvalidParam(f"unknown CHSH state {state!r}")


def run_chsh(
    a: float = 0.0,
    a_prime: float = math.pi / 2,
    b: float = math.pi / 4,
    b_prime: float = 3 * math.pi / 4,
    state="singlet",
    **state_params,
) -> ScenarioResult:
    """CHSH correlators for ``A(theta) = cos(theta) Z + sin(theta) X`` on each side.

    ``state`` is a name (``singlet``, ``product``, ``diagonal_classical``) or a
    ready two-qubit :class:`DensityMatrix`.
    """
    angles = {"a": a, "a_prime": a_prime, "b": b, "b_prime": b_prime}
    rho = state if isinstance(state, DensityMatrix) else chsh_state(state, state_params)
    analytic = {f"e_{name}": correlator(rho, angles[x], angles[y]) for name, x, y in CHSH_SETTINGS}
    analytic["s"] = chsh_value(*analytic.values())
    if state == "diagonal_classical":
        analytic["s_max_deterministic"] = deterministic_chsh_max()
    label = state if isinstance(state, str) else "custom"
    return ScenarioResult(
        "chsh",
        analytic,
        metadata={"params": {**angles, "state": label, **state_params}},
    )


def chsh_projectors(x: float, y: float) -> tuple[ProjectorSet, np.ndarray]:
    """Joint +-1 outcome projectors for the setting pair and their outcome products."""
    _, va = np.linalg.eigh(bloch_observable(x).mat)
    _, vb = np.linalg.eigh(bloch_observable(y).mat)
    # eigh orders eigenvalues ascending: -1 then +1
    v = np.kron(va, vb)
    signs = np.array([1.0, -1.0, -1.0, 1.0])
    return ProjectorSet.from_eigenbasis(v), signs


# --- registry and config ---------------------------------------------------

_REQUIRED = object()


def _real(name, lo=None, hi=None, positive=False):
    def check(v):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise InvalidParam(f"{name} must be a finite real, got {v!r}")
        v = float(v)
        if positive and not v > 0:
            raise InvalidParam(f"{name} must be positive, got {v!r}")
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise InvalidParam(f"{name} must lie in [{lo}, {hi}], got {v!r}")
        return v
    return check


def _integer(name, lo=0):
    def check(v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidParam(f"{name} must be an integer, got {v!r}")
        if v < lo:
            raise InvalidParam(f"{name} must be at least {lo}, got {v!r}")
        return v
    return check


def _boolean(name):
    def check(v):
        if not isinstance(v, bool):
            raise InvalidParam(f"{name} must be true or false, got {v!r}")
        return v
    return check


def _choice(name, options):
    def check(v):
        if v not in options or isinstance(v, bool):
            raise InvalidParam(f"{name} must be one of {list(options)}, got {v!r}")
        return v
    return check


def _arm(name):
    def check(v):
        _blocked_arms(v)
        return v
    return check


@dataclass(frozen=True)
class ScenarioSpec:
    runner: Callable[..., ScenarioResult]
    params: dict[str, tuple[Callable, Any]]
    description: str


SCENARIOS: dict[str, ScenarioSpec] = {
    "double_slit": ScenarioSpec(
        run_double_slit,
        {
            "n_screen": (_integer("n_screen", 16), 201),
            "d_over_lambda": (_real("d_over_lambda", positive=True), 2.5),
            "open_slits": (_choice("open_slits", ("left", "right", "both")), "both"),
            "which_path_marking": (_boolean("which_path_marking"), False),
        },
        "two-slit far-field pattern with optional which-path marking",
    ),
    "mach_zehnder": ScenarioSpec(
        run_mach_zehnder,
        {"phase": (_real("phase"), 0.0), "blocked_arm": (_arm("blocked_arm"), None)},
        "balanced interferometer with a phase on arm 0",
    ),
    "bomb_test": ScenarioSpec(
        run_bomb_test,
        {"phase": (_real("phase"), 0.0), "blocked_arm": (_arm("blocked_arm"), 1)},
        "interaction-free detection of an obstruction in one arm",
    ),
    "cat": ScenarioSpec(
        run_cat,
        {
            "decay_per_step": (_real("decay_per_step", 0.0, 1.0), 0.1),
            "steps": (_integer("steps", 0), 10),
        },
        "classical decay chain coupling an atom to a cat",
    ),
    "chsh": ScenarioSpec(
        run_chsh,
        {
            "a": (_real("a"), 0.0),
            "a_prime": (_real("a_prime"), math.pi / 2),
            "b": (_real("b"), math.pi / 4),
            "b_prime": (_real("b_prime"), 3 * math.pi / 4),
            "state": (_choice("state", ("singlet", "product", "diagonal_classical")), "singlet"),
            "theta_a": (_real("theta_a"), 0.0),
            "phi_a": (_real("phi_a"), 0.0),
            "theta_b": (_real("theta_b"), 0.0),
            "phi_b": (_real("phi_b"), 0.0),
            "p00": (_real("p00", 0.0, 1.0), 0.5),
            "p01": (_real("p01", 0.0, 1.0), 0.0),
            "p10": (_real("p10", 0.0, 1.0), 0.0),
            "p11": (_real("p11", 0.0, 1.0), 0.5),
        },
        "CHSH correlators for singlet, product or classical states",
    ),
}


def scenario_names() -> list[str]:
    return list(SCENARIOS)


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    samples: int = 0

    def __post_init__(self):
        if self.kind not in SCENARIOS:
            raise UnknownScenario(f"unknown scenario {self.kind!r}; expected one of {scenario_names()}")
        for name, value in (("seed", self.seed), ("samples", self.samples)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvalidParam(f"{name} must be a nonnegative integer, got {value!r}")
        if self.seed >= 2**64:
            raise InvalidParam("seed must fit in 64 bits")
        spec = SCENARIOS[self.kind]
        unknown = sorted(set(self.params) - set(spec.params))
        if unknown:
            raise InvalidParam(f"unknown parameter {unknown[0]!r} for scenario {self.kind!r}")
        full = {}
        for name, (check, default) in spec.params.items():
            full[name] = check(self.params[name]) if name in self.params else default
        object.__setattr__(self, "params", full)

    def with_overrides(self, seed=None, samples=None) -> ScenarioConfig:
        return ScenarioConfig(
            self.kind,
            dict(self.params),
            self.seed if seed is None else seed,
            self.samples if samples is None else samples,
        )


def _sample(result: ScenarioResult, config: ScenarioConfig) -> ScenarioResult:
    rng = make_rng(config.seed)
    n = config.samples
    if config.kind == "double_slit":
        freqs = sample_frequencies(result.intensity, n, rng)
        return replace(result, empirical={"visibility": visibility(freqs)}, empirical_intensity=freqs)
    if config.kind == "chsh":
        rho = chsh_state(config.params["state"], config.params)
        p = config.params
        emp = {}
        for name, x, y in CHSH_SETTINGS:
            ps, signs = chsh_projectors(p[x], p[y])
            freqs = sample_frequencies(born_probabilities(rho, ps), n, rng)
            emp[f"e_{name}"] = float(freqs @ signs)
        emp["s"] = chsh_value(*emp.values())
        return replace(result, empirical=emp)
    names = result.distribution
    freqs = sample_frequencies([result.analytic[k] for k in names], n, rng)
    return replace(result, empirical=dict(zip(names, map(float, freqs))))


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    """Run the apparatus model, then optionally sample ``config.samples`` clicks."""
    result = SCENARIOS[config.kind].runner(**config.params)
    result = replace(result, metadata={
        "kind": config.kind,
        "params": dict(config.params),
        "seed": config.seed,
        "samples": config.samples,
    })
    if config.samples > 0:
        result = _sample(result, config)
    return result


def sweep(config: ScenarioConfig, name: str, values) -> list[ScenarioResult]:
    """Run ``config`` once per value of parameter ``name``.

    Run ``i`` gets its own seed derived from ``config.seed`` and ``i``, so sweeps
    can be split across workers without changing any result.
    """
    values = list(values)
    seeds = spawn_seeds(config.seed, len(values))
    out = []
    for value, seed in zip(values, seeds):
        params = {**config.params, name: value}
        out.append(run_scenario(ScenarioConfig(config.kind, params, seed, config.samples)))
    return out
