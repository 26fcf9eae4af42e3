"""Density-matrix kernel in which classical mechanics is the basis/diagonal/permutation subtheory."""
from .composition import partial_trace, tensor_operator, tensor_state
from .dynamics import (
    PermutationMap,
    apply_permutation,
    apply_stochastic,
    apply_unitary,
    evolve_heisenberg,
    evolve_von_neumann,
)
from .hilbert import Tolerance, eig_hermitian, mat_close, unitary_from_hamiltonian
from .measurement import ProjectorSet, born_probabilities, projective_measure
from .observables import Observable, diagonal_observable, expectation, make_observable, robertson_check, variance
from .phase_space import HamiltonianField, PhaseSpaceDensity, PhaseSpaceGrid, evolve_liouville, poisson_bracket
from .scenarios import ScenarioConfig, ScenarioResult, run_scenario
from .states import (
    DensityMatrix,
    StateClass,
    classical_basis_state,
    classical_mixture,
    classify_state,
    make_density,
    purity,
)

__version__ = "0.1.0"
