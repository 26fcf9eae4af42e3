import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualsim.errors import InvalidConfig, InvalidParam, UnknownScenario
from dualsim.scenarios import (
    SCENARIOS,
    ScenarioConfig,
    product_state,
    run_bomb_test,
    run_cat,
    run_chsh,
    run_double_slit,
    run_mach_zehnder,
    run_scenario,
    sweep,
)
from dualsim.states import classical_mixture

R2 = math.sqrt(2)
SPLITTER = [[1 / R2, 1j / R2], [1j / R2, 1 / R2]]


def mz_paths(phase, blocked=()):
    """Sum amplitudes over the two arms, photon entering in mode 0."""
    out = [0j, 0j]
    absorbed = 0.0
    for arm in (0, 1):
        amp = SPLITTER[arm][0]
        if arm in blocked:
            absorbed += abs(amp) ** 2
            continue
        if arm == 0:
            amp *= cmath.exp(1j * phase)
        for port in (0, 1):
            out[port] += SPLITTER[port][arm] * amp
    return {"p_bar": abs(out[0]) ** 2, "p_cross": abs(out[1]) ** 2, "p_absorbed": absorbed}


def assert_matches(analytic, oracle, tol=1e-9):
    for k, v in oracle.items():
        assert analytic[k] == pytest.approx(v, abs=tol), k


class TestMachZehnder:
    def test_tuned_exit_is_deterministic(self):
        r = run_mach_zehnder(0.0)
        assert r.analytic["p_cross"] == pytest.approx(1.0, abs=1e-9)
        assert r.analytic["p_bar"] == pytest.approx(0.0, abs=1e-9)
        assert_matches(r.analytic, mz_paths(0.0))

    def test_half_wave_swaps_ports(self):
        r = run_mach_zehnder(math.pi)
        assert_matches(r.analytic, {"p_cross": 0.0, "p_bar": 1.0})
        assert_matches(r.analytic, mz_paths(math.pi))

    def test_blocked_arm(self):
        r = run_mach_zehnder(0.0, blocked_arm=1)
        assert_matches(r.analytic, {"p_absorbed": 0.5, "p_cross": 0.25, "p_bar": 0.25})
        assert_matches(r.analytic, mz_paths(0.0, (1,)))

    @given(phase=st.floats(-10, 10), blocked=st.sampled_from([None, 0, 1, "both"]))
    def test_against_path_sum(self, phase, blocked):
        arms = {None: (), 0: (0,), 1: (1,), "both": (0, 1)}[blocked]
        r = run_mach_zehnder(phase, blocked)
        assert_matches(r.analytic, mz_paths(phase, arms))
        assert sum(r.analytic[k] for k in r.distribution) == pytest.approx(1.0, abs=1e-9)
        if blocked is None:
            assert r.analytic["p_cross"] == pytest.approx(math.cos(phase / 2) ** 2, abs=1e-9)

    def test_bad_arm(self):
        with pytest.raises(InvalidParam):
            run_mach_zehnder(0.0, blocked_arm=2)


class TestBombTest:
    def test_signature(self):
        r = run_bomb_test(0.0)
        assert_matches(r.analytic, {"p_absorbed": 0.5, "p_cross": 0.25, "p_bar": 0.25, "p_interaction_free": 0.25})

    def test_both_arms_blocked(self):
        assert run_bomb_test(0.0, "both").analytic["p_absorbed"] == pytest.approx(1.0, abs=1e-12)

    def test_no_bomb_reduces_to_interferometer(self):
        r = run_bomb_test(0.0, None)
        assert r.analytic["p_bar"] == pytest.approx(0.0, abs=1e-12)

    @given(phase=st.floats(-10, 10))
    def test_no_bomb_bitwise(self, phase):
        bomb, mz = run_bomb_test(phase, None).analytic, run_mach_zehnder(phase).analytic
        for k, v in mz.items():
            assert bomb[k] == v


def fringe_oracle(theta, d_over_lambda, amps):
    """|sum of slit amplitudes|^2 summed incoherently over marker branches."""
    x = math.pi * d_over_lambda * math.sin(theta)
    phases = (cmath.exp(1j * x), cmath.exp(-1j * x))
    return sum(abs(sum(a * p for a, p in zip(branch, phases))) ** 2 for branch in amps)


class TestDoubleSlit:
    @pytest.mark.parametrize("dl", [0.5, 1.5, 2.5, 4.5])
    def test_full_visibility(self, dl):
        r = run_double_slit(201, dl, "both")
        assert r.analytic["visibility"] == pytest.approx(1.0, abs=1e-9)
        raw = np.array([fringe_oracle(t, dl, [(1 / R2, 1 / R2)]) for t in r.theta])
        np.testing.assert_allclose(r.intensity, raw / raw.sum(), atol=1e-12)
        np.testing.assert_allclose(r.intensity, np.cos(math.pi * dl * np.sin(r.theta)) ** 2 / raw.sum() * 2, atol=1e-12)

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_single_slit_flat(self, side):
        r = run_double_slit(64, 2.5, side)
        assert r.analytic["visibility"] == pytest.approx(0.0, abs=1e-9)

    def test_marking_kills_fringes(self):
        r = run_double_slit(201, 2.5, "both", which_path_marking=True)
        assert r.analytic["visibility"] == pytest.approx(0.0, abs=1e-9)
        # orthogonal markers: each path is its own branch
        raw = np.array([fringe_oracle(t, 2.5, [(1 / R2, 0), (0, 1 / R2)]) for t in r.theta])
        np.testing.assert_allclose(r.intensity, raw / raw.sum(), atol=1e-12)

    @given(n=st.integers(16, 300), dl=st.floats(0.05, 20))
    def test_marking_lowers_visibility(self, n, dl):
        plain = run_double_slit(n, dl, "both").analytic["visibility"]
        marked = run_double_slit(n, dl, "both", True).analytic["visibility"]
        if plain > 1e-6:
            assert marked < plain
        assert run_double_slit(n, dl).intensity.sum() == pytest.approx(1.0, abs=1e-9)

    def test_invalid(self):
        with pytest.raises(InvalidConfig):
            run_double_slit(64, 2.5, "left", which_path_marking=True)
        with pytest.raises(InvalidParam):
            run_double_slit(8, 2.5)
        with pytest.raises(InvalidParam):
            run_double_slit(64, -1.0)


class TestCat:
    def test_no_decay(self):
        for steps in (0, 1, 50):
            assert run_cat(0.0, steps).analytic["p_alive"] == 1.0

    def test_dead_given_decay_is_one(self):
        for lam, steps in ((0.1, 10), (0.0, 5), (1.0, 1), (0.37, 0), (0.3, 25), (0.05, 200)):
            assert run_cat(lam, steps).analytic["p_dead_given_decay"] == 1.0

    @pytest.mark.parametrize("lam,steps", [(0.1, 10), (0.5, 3), (0.01, 400), (1.0, 2)])
    def test_survival_against_iterated_matrix(self, lam, steps):
        chain = np.linalg.matrix_power(np.array([[1 - lam, 0.0], [lam, 1.0]]), steps) @ np.array([1.0, 0.0])
        r = run_cat(lam, steps).analytic
        assert r["p_alive"] == pytest.approx(chain[0], abs=1e-12)
        assert r["p_alive"] == pytest.approx((1 - lam) ** steps, abs=1e-12)
        assert r["p_alive"] + r["p_dead"] == pytest.approx(1.0, abs=1e-12)

    def test_reference_value(self):
        assert run_cat(0.1, 10).analytic["p_alive"] == pytest.approx(0.34868, abs=1e-5)

    def test_invalid(self):
        with pytest.raises(InvalidParam):
            run_cat(1.5, 3)


class TestCHSH:
    def test_singlet_correlators(self):
        angles = dict(a=0.3, a_prime=1.1, b=-0.4, b_prime=2.0)
        r = run_chsh(**angles, state="singlet").analytic
        for key, x, y in (("e_ab", "a", "b"), ("e_abp", "a", "b_prime"), ("e_apb", "a_prime", "b"), ("e_apbp", "a_prime", "b_prime")):
            assert r[key] == pytest.approx(-math.cos(angles[x] - angles[y]), abs=1e-12)

    def test_singlet_optimal(self):
        assert run_chsh(0, math.pi / 2, math.pi / 4, 3 * math.pi / 4).analytic["s"] == pytest.approx(2 * R2, abs=1e-6)

    def test_deterministic_bound_by_enumeration(self):
        best = 0
        for a, ap, b, bp in itertools.product((-1, 1), repeat=4):
            best = max(best, abs(a * b - a * bp + ap * b + ap * bp))
        r = run_chsh(state="diagonal_classical").analytic
        assert best == 2
        assert r["s_max_deterministic"] == best

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(-7, 7), min_size=8, max_size=8))
    def test_product_states_obey_bound(self, xs):
        rho = product_state(*xs[4:])
        assert run_chsh(*xs[:4], state=rho).analytic["s"] <= 2 + 1e-9

    @settings(deadline=None)
    @given(st.lists(st.floats(-7, 7), min_size=4, max_size=4), st.lists(st.floats(0.01, 1), min_size=4, max_size=4))
    def test_classical_mixtures_obey_bound(self, angles, weights):
        rho = classical_mixture(np.array(weights) / sum(weights))
        assert run_chsh(*angles, state=rho).analytic["s"] <= 2 + 1e-9


class TestConfig:
    def test_defaults_filled(self):
        cfg = ScenarioConfig("cat", {"steps": 3})
        assert cfg.params == {"decay_per_step": 0.1, "steps": 3}

    def test_unknown_kind(self):
        with pytest.raises(UnknownScenario):
            ScenarioConfig("warp_drive")

    def test_unknown_param(self):
        with pytest.raises(InvalidParam, match="phse"):
            ScenarioConfig("mach_zehnder", {"phse": 1.0})

    @pytest.mark.parametrize("kind,params", [
        ("cat", {"decay_per_step": 1.5}),
        ("cat", {"steps": 2.5}),
        ("double_slit", {"open_slits": "middle"}),
        ("double_slit", {"which_path_marking": 1}),
        ("mach_zehnder", {"phase": "zero"}),
        ("bomb_test", {"blocked_arm": 3}),
        ("chsh", {"state": "ghz"}),
    ])
    def test_bad_params(self, kind, params):
        with pytest.raises(InvalidParam):
            ScenarioConfig(kind, params)

    def test_bad_seed(self):
        with pytest.raises(InvalidParam):
            ScenarioConfig("cat", seed=-1)


EMPIRICAL_CASES = [
    ("mach_zehnder", {"phase": 1.0}),
    ("bomb_test", {}),
    ("double_slit", {"n_screen": 41}),
    ("double_slit", {"which_path_marking": True, "n_screen": 32}),
    ("cat", {"decay_per_step": 0.2, "steps": 4}),
    ("chsh", {}),
    ("chsh", {"state": "product", "theta_a": 0.7, "theta_b": 2.1}),
    ("chsh", {"state": "diagonal_classical", "p00": 0.4, "p11": 0.6}),
]


@pytest.mark.parametrize("kind,params", EMPIRICAL_CASES)
def test_empirical_matches_analytic(kind, params):
    n = 10_000
    r = run_scenario(ScenarioConfig(kind, params, seed=99, samples=n))
    bound = 5 / math.sqrt(n)
    assert r.empirical
    for k, v in r.empirical.items():
        if k in ("s", "visibility"):
            continue
        assert abs(v - r.analytic[k]) <= bound, k
    if r.intensity is not None:
        assert np.max(np.abs(r.empirical_intensity - r.intensity)) <= bound


def test_distributions_sum_to_one():
    for kind in SCENARIOS:
        r = run_scenario(ScenarioConfig(kind))
        if r.distribution:
            assert sum(r.analytic[k] for k in r.distribution) == pytest.approx(1.0, abs=1e-9)


def test_run_is_pure_given_seed():
    cfg = ScenarioConfig("bomb_test", {}, seed=4, samples=500)
    assert run_scenario(cfg).empirical == run_scenario(cfg).empirical
    assert run_scenario(cfg).metadata == {"kind": "bomb_test", "params": {"phase": 0.0, "blocked_arm": 1}, "seed": 4, "samples": 500}


def test_sweep_seeds_are_derived():
    cfg = ScenarioConfig("mach_zehnder", {}, seed=5, samples=200)
    runs = sweep(cfg, "phase", [0.0, 1.0, 2.0])
    again = sweep(cfg, "phase", [0.0, 1.0, 2.0])
    assert [r.empirical for r in runs] == [r.empirical for r in again]
    assert len({r.metadata["seed"] for r in runs}) == 3
    assert runs[1].analytic == run_mach_zehnder(1.0).analytic
