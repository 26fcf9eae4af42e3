import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualsim.errors import IndexOutOfRange, NegativeProbability, NotHermitian, NotNormalized, NotPositive, TraceNotOne
from dualsim.states import (
    StateClass,
    classical_basis_state,
    classical_mixture,
    classify_state,
    diagonal_probabilities,
    make_density,
    maximally_mixed,
    pure_state,
    purity,
)

from conftest import random_density, seeds


def test_make_density_basis():
    rho = make_density(np.diag([1.0, 0.0]))
    assert classify_state(rho) is StateClass.BASIS_CLASSICAL


def test_make_density_trace():
    with pytest.raises(TraceNotOne):
        make_density(np.diag([0.5, 0.6]))


def test_make_density_not_positive():
    # eigenvalues 0.5 +- 0.7
    assert np.allclose(np.linalg.eigvalsh([[0.5, 0.7], [0.7, 0.5]]), [-0.2, 1.2])
    with pytest.raises(NotPositive):
        make_density([[0.5, 0.7], [0.7, 0.5]])


def test_make_density_not_hermitian():
    with pytest.raises(NotHermitian):
        make_density([[0.5, 0.3], [0.0, 0.5]])


def test_make_density_symmetrises(rng):
    rho = random_density(rng, 4).mat
    noisy = rho + 1e-12 * (rng.normal(size=(4, 4)))
    out = make_density(noisy)
    assert np.array_equal(out.mat, out.mat.conj().T)
    assert make_density(out.mat).mat.tolist() == out.mat.tolist()


def test_density_is_read_only():
    rho = classical_basis_state(0, 2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 0.5


def test_basis_state_position():
    np.testing.assert_array_equal(classical_basis_state(2, 4).mat, np.diag([0, 0, 1, 0]))
    np.testing.assert_array_equal(classical_basis_state(0, 1).mat, [[1]])
    with pytest.raises(IndexOutOfRange):
        classical_basis_state(5, 4)


def test_classical_mixture():
    np.testing.assert_array_equal(classical_mixture([0.5, 0.5]).mat, np.diag([0.5, 0.5]))
    np.testing.assert_array_equal(classical_mixture([1.0]).mat, [[1]])
    with pytest.raises(NotNormalized):
        classical_mixture([0.5, 0.6])
    with pytest.raises(NegativeProbability):
        classical_mixture([1.5, -0.5])


def test_classify_examples():
    assert classify_state(make_density(np.diag([0.0, 1.0]))) is StateClass.BASIS_CLASSICAL
    assert classify_state(make_density(0.5 * np.ones((2, 2)))) is StateClass.PURE_QUANTUM
    assert classify_state(make_density(np.diag([0.3, 0.7]))) is StateClass.DIAGONAL_CLASSICAL
    assert classify_state(maximally_mixed(3)) is StateClass.DIAGONAL_CLASSICAL
    assert classify_state(make_density([[0.5, 0.25], [0.25, 0.5]])) is StateClass.MIXED_QUANTUM


def test_purity_examples():
    assert purity(classical_basis_state(3, 5)) == 1.0
    assert purity(make_density(np.diag([0.5, 0.5]))) == pytest.approx(0.5, abs=1e-15)
    assert purity(make_density(np.diag([0.3, 0.7]))) == pytest.approx(0.58, abs=1e-15)


@given(d=st.integers(1, 32), data=st.data())
def test_every_basis_state_validates(d, data):
    k = data.draw(st.integers(0, d - 1))
    rho = make_density(classical_basis_state(k, d).mat)
    assert classify_state(rho) is StateClass.BASIS_CLASSICAL


@given(seed=seeds, d=st.integers(1, 8), rank=st.integers(1, 8))
def test_purity_one_iff_pure_class(seed, d, rank):
    rho = random_density(np.random.default_rng(seed), d, min(rank, d))
    cls = classify_state(rho)
    assert 1 / d - 1e-9 <= purity(rho) <= 1 + 1e-9
    is_pure = abs(purity(rho) - 1) <= 1e-9
    assert is_pure == (cls in (StateClass.BASIS_CLASSICAL, StateClass.PURE_QUANTUM))


@given(probs=st.lists(st.floats(0, 1), min_size=1, max_size=10).filter(lambda p: sum(p) > 0.1))
def test_diagonal_round_trip(probs):
    p = np.array(probs) / sum(probs)
    rho = classical_mixture(p)
    if classify_state(rho) is StateClass.DIAGONAL_CLASSICAL:
        np.testing.assert_array_equal(classical_mixture(diagonal_probabilities(rho)).mat, rho.mat)


def test_pure_state_normalises():
    rho = pure_state([3.0, 4.0j])
    assert purity(rho) == pytest.approx(1.0)
    assert rho.mat[0, 0].real == pytest.approx(9 / 25)
