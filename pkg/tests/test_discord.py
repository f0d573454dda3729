"""Vanishing-discord detection via pinching defects."""

import numpy as np
import pytest

from inducedmaps import (
    INDETERMINATE,
    NONZERO,
    VQD,
    EnsembleTerm,
    SeparableEnsemble,
    ShapeError,
    ValidationError,
    assemble,
    dagger,
    haar_unitary,
    has_vqd,
    pinching_defect,
    tensor,
)
from inducedmaps.presets import (
    bell_density,
    four_block_ensemble,
    random_density,
    random_vqd_ensemble,
)

RHO_E_1 = np.diag([1.0, 0.0]).astype(complex)
RHO_E_2 = np.diag([0.3, 0.7]).astype(complex)


def bloch_basis(theta, phi):
    """Orthonormal qubit basis whose first column points along (theta, phi)."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return np.array([[c, -s * e.conjugate()], [s * e, c]], dtype=complex)


def classical_quantum_state(weights, basis, env_states):
    terms = tuple(
        EnsembleTerm(w, np.outer(basis[:, k], basis[:, k].conj()), env)
        for k, (w, env) in enumerate(zip(weights, env_states))
    )
    dim_e = env_states[0].shape[0]
    return assemble(SeparableEnsemble(basis.shape[0], dim_e, terms))


def test_pinching_defect_of_bell_in_computational_basis():
    assert abs(pinching_defect(bell_density(), np.eye(2), 2, 2) - 0.5) < 1e-12


def test_pinching_defect_vanishes_for_classical_mixture():
    rho = classical_quantum_state((0.6, 0.4), np.eye(2, dtype=complex), (RHO_E_1, RHO_E_2))
    assert pinching_defect(rho, np.eye(2), 2, 2) < 1e-15


def test_pinching_defect_invariant_under_column_phases_and_order():
    rng = np.random.default_rng(31)
    rho = random_density(4, rng)
    basis = haar_unitary(2, rng)
    base = pinching_defect(rho, basis, 2, 2)
    phased = basis * np.exp(1j * rng.uniform(0, 2 * np.pi, size=2))
    swapped = basis[:, ::-1]
    assert abs(pinching_defect(rho, phased, 2, 2) - base) < 1e-12
    assert abs(pinching_defect(rho, swapped, 2, 2) - base) < 1e-12


def test_pinching_defect_validates_basis_and_shape():
    with pytest.raises(ValidationError):
        pinching_defect(bell_density(), np.ones((2, 2)), 2, 2)
    with pytest.raises(ShapeError):
        pinching_defect(bell_density(), np.eye(3), 3, 2)


def test_classical_mixture_with_distinct_weights_is_vqd():
    rho = classical_quantum_state((0.6, 0.4), np.eye(2, dtype=complex), (RHO_E_1, RHO_E_2))
    verdict = has_vqd(rho, 2, 2)
    assert verdict.status == VQD
    assert verdict.residual <= 1e-12
    # The pinching basis is the computational one up to column order and
    # phase, so its entrywise magnitudes form a permutation matrix.
    magnitudes = np.abs(verdict.basis)
    assert np.abs(np.sort(magnitudes, axis=0) - np.array([[0.0, 0.0], [1.0, 1.0]])).max() < 1e-9


def test_equal_weight_classical_mixture_is_vqd_despite_degeneracy():
    rho = classical_quantum_state((0.5, 0.5), np.eye(2, dtype=complex), (RHO_E_1, RHO_E_2))
    verdict = has_vqd(rho, 2, 2)
    assert verdict.status == VQD
    assert verdict.residual <= 1e-12


def test_rotated_classical_mixtures_are_vqd():
    rng = np.random.default_rng(32)
    for weights in ((0.6, 0.4), (0.5, 0.5)):
        basis = haar_unitary(2, rng)
        rho = classical_quantum_state(weights, basis, (RHO_E_1, RHO_E_2))
        verdict = has_vqd(rho, 2, 2)
        assert verdict.status == VQD, f"weights {weights}: {verdict}"
        assert verdict.residual <= 1e-10


def test_flat_block_ensemble_is_vqd():
    e = four_block_ensemble()
    verdict = has_vqd(assemble(e), e.dim_a, e.dim_e)
    assert verdict.status == VQD
    assert verdict.residual <= 1e-10


def test_orthogonal_rank_one_ensembles_are_vqd():
    rng = np.random.default_rng(33)
    for dim_a, dim_e in ((2, 2), (3, 2), (2, 3)):
        for haar_flag in (False, True):
            e = random_vqd_ensemble(dim_a, dim_e, rng, haar_basis=haar_flag)
            verdict = has_vqd(assemble(e), dim_a, dim_e)
            assert verdict.status == VQD
            assert verdict.residual <= 1e-10


def test_vqd_verdict_is_self_certifying():
    rng = np.random.default_rng(34)
    e = random_vqd_ensemble(3, 2, rng)
    rho = assemble(e)
    verdict = has_vqd(rho, 3, 2)
    assert verdict.status == VQD
    basis = verdict.basis
    assert np.abs(dagger(basis) @ basis - np.eye(3)).max() < 1e-10
    assert abs(pinching_defect(rho, basis, 3, 2) - verdict.residual) < 1e-12


def test_bell_state_has_nonzero_discord():
    verdict = has_vqd(bell_density(), 2, 2)
    assert verdict.status == NONZERO
    # degenerate marginal: certified by non-commuting probe marginals,
    # so no single failing basis is exhibited
    assert verdict.basis is None
    assert verdict.residual > 0.1


def test_nonzero_verdict_survives_environment_unitaries():
    rng = np.random.default_rng(35)
    v = haar_unitary(2, rng)
    rotated = tensor(np.eye(2, dtype=complex), v) @ bell_density() @ dagger(
        tensor(np.eye(2, dtype=complex), v)
    )
    assert has_vqd(rotated, 2, 2).status == NONZERO


def test_vqd_verdict_survives_environment_unitaries():
    rng = np.random.default_rng(36)
    e = four_block_ensemble()
    v = haar_unitary(e.dim_e, rng)
    rotated = tensor(np.eye(e.dim_a, dtype=complex), v) @ assemble(e) @ dagger(
        tensor(np.eye(e.dim_a, dtype=complex), v)
    )
    assert has_vqd(rotated, e.dim_a, e.dim_e).status == VQD


def test_nonorthogonal_mixture_has_discord_against_grid_search():
    """Mixing |0><0| and |+><+| with distinct environments leaves discord.

    A 120x120 grid over all qubit measurement bases never pushes the
    pinching defect anywhere near zero, and the verdict agrees: the
    marginal is nondegenerate, so its eigenbasis is the only candidate and
    its defect is conclusive.
    """
    plus = np.full((2, 2), 0.5, dtype=complex)
    rho = 0.5 * tensor(np.diag([1.0, 0.0]).astype(complex), RHO_E_1) + 0.5 * tensor(
        plus, RHO_E_2
    )
    grid_min = np.inf
    for theta in np.linspace(0.0, np.pi, 120):
        for phi in np.linspace(0.0, 2.0 * np.pi, 120, endpoint=False):
            grid_min = min(grid_min, pinching_defect(rho, bloch_basis(theta, phi), 2, 2))
    assert grid_min > 1e-3
    verdict = has_vqd(rho, 2, 2)
    assert verdict.status == NONZERO
    assert verdict.basis is not None
    assert verdict.residual > 1e-3
    assert abs(pinching_defect(rho, verdict.basis, 2, 2) - verdict.residual) < 1e-12


def test_weakly_coherent_degenerate_state_is_indeterminate():
    """A barely-perturbed maximally mixed state defeats every candidate.

    The marginal is exactly degenerate, the probe marginals commute to
    within tolerance (their commutator scales with the square of the
    perturbation), and no candidate basis reaches the defect tolerance, so
    the honest verdict is INDETERMINATE rather than a guess either way.
    """
    eps = 1e-5
    rho = eps * bell_density() + (1.0 - eps) * np.eye(4, dtype=complex) / 4.0
    verdict = has_vqd(rho, 2, 2)
    assert verdict.status == INDETERMINATE
    assert verdict.basis is None
    assert 0.0 < verdict.residual < 1e-4


def test_has_vqd_is_deterministic_per_seed():
    first = has_vqd(bell_density(), 2, 2, seed=5)
    second = has_vqd(bell_density(), 2, 2, seed=5)
    assert first.status == second.status
    assert first.residual == second.residual


def test_has_vqd_rejects_mismatched_dimensions():
    with pytest.raises(ShapeError):
        has_vqd(bell_density(), 3, 2)
