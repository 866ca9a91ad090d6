"""Ansatz state constructors and energy functionals."""

from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg

from chebvcc.ansatz import (
    AnsatzSpec,
    energy_projective_cc,
    energy_rayleigh,
    reference_state,
    state_anti_hermitian_exp,
    state_cvcc,
    state_exact_vcc,
    state_hcvcc,
    state_trotter_vcc,
)
from chebvcc.operators import (
    AmplitudeVector,
    build_cluster_operator,
    build_hamiltonian,
    space_for,
    spectral_norm,
    split_hermitian,
    sz_excitation_map,
    zero_amplitudes,
)
from chebvcc.reference import fci_ground_energy, hf_energy
from conftest import load_cached


def setup_system(system, distance):
    integrals = load_cached(system, distance)
    space = space_for(integrals)
    H = build_hamiltonian(integrals, space)
    return integrals, space, H


def random_t(space, seed, scale=0.1):
    index_map = sz_excitation_map(space)
    rng = np.random.default_rng(seed)
    return AmplitudeVector(rng.uniform(-scale, scale, len(index_map)),
                           index_map)


def test_spec_validation():
    AnsatzSpec("HF")
    AnsatzSpec("C^d", degree=0)
    AnsatzSpec("HC^d-circuit", degree=3)
    with pytest.raises(ValueError, match="unknown method"):
        AnsatzSpec("CCSD")
    with pytest.raises(ValueError, match="unknown ucc_mode"):
        AnsatzSpec("dUCC", ucc_mode="trotterized")
    with pytest.raises(ValueError, match="requires degree"):
        AnsatzSpec("C^d")
    with pytest.raises(ValueError, match="requires degree"):
        AnsatzSpec("HC^d", degree=-1)
    with pytest.raises(ValueError, match="takes no degree"):
        AnsatzSpec("exact-VCC", degree=2)


def test_reference_state_is_unit_basis_vector():
    _, space, H = setup_system("h2", "0.74")
    psi = reference_state(space)
    assert psi[space.reference_index] == 1.0
    assert np.linalg.norm(psi) == 1.0
    assert abs(energy_rayleigh(psi, H).energy - hf_energy(H, space)) < 1e-14


def test_exact_vcc_zero_amplitudes():
    _, space, _ = setup_system("h2", "0.74")
    t = zero_amplitudes(space)
    assert np.array_equal(state_exact_vcc(t, space), reference_state(space))


def test_exact_vcc_single_double_amplitude():
    _, space, _ = setup_system("h2", "0.74")
    index_map = sz_excitation_map(space)
    values = np.zeros(len(index_map))
    pos = index_map.index(("d", 0, 1, 2, 3))
    values[pos] = 0.27
    t = AmplitudeVector(values, index_map)
    psi = state_exact_vcc(t, space)
    # T^2 |ref> vanishes here, so e^T |ref> = |ref> + T |ref>
    expected = reference_state(space)
    expected = expected + build_cluster_operator(t, space).entries @ expected
    assert np.allclose(psi, expected, atol=1e-15)
    assert abs(psi[space.reference_index] - 1.0) < 1e-15
    assert abs(np.abs(psi).sum() - (1.0 + 0.27)) < 1e-12


def test_exact_vcc_matches_dense_expm():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=1, scale=0.2)
    T = build_cluster_operator(t, space).toarray()
    oracle = scipy.linalg.expm(T) @ reference_state(space)
    assert np.allclose(state_exact_vcc(t, space), oracle, atol=1e-12)


def test_cvcc_degree_one_closed_form():
    from chebvcc.chebyshev import cheb_coeffs_exp

    _, space, _ = setup_system("h2", "0.74")
    t = random_t(space, seed=2, scale=0.3)
    T = build_cluster_operator(t, space)
    tau = spectral_norm(T)
    coeffs = cheb_coeffs_exp(tau, 1)
    ref = reference_state(space)
    expected = coeffs.c[0] * ref + (coeffs.c[1] / tau) * (T.entries @ ref)
    assert np.allclose(state_cvcc(t, space, 1), expected, atol=1e-13)


def test_cvcc_zero_amplitudes_any_degree():
    _, space, _ = setup_system("h2", "0.74")
    t = zero_amplitudes(space)
    for d in (0, 1, 5):
        assert np.array_equal(state_cvcc(t, space, d), reference_state(space))


def test_cvcc_degree_zero_energy_is_hf():
    _, space, H = setup_system("h4", "1.00")
    t = random_t(space, seed=3)
    psi = state_cvcc(t, space, 0)
    assert abs(energy_rayleigh(psi, H).energy - hf_energy(H, space)) < 1e-12


def test_cvcc_support_is_reference_plus_rank_two():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=4)
    psi = state_cvcc(t, space, 1)
    ref = space.reference_index
    for det in np.nonzero(np.abs(psi) > 1e-14)[0]:
        assert int(det ^ ref).bit_count() <= 4


def test_cvcc_high_degree_converges_to_exact():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=5, scale=0.2)
    exact = state_exact_vcc(t, space)
    approx = state_cvcc(t, space, 25)
    assert np.linalg.norm(approx - exact) < 1e-9


def test_anti_hermitian_exponential_is_unitary():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=6, scale=0.4)
    for mode in ("exact-exponential", "disentangled-product"):
        psi = state_anti_hermitian_exp(t, space, mode=mode)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-12


def test_anti_hermitian_zero_amplitudes():
    _, space, _ = setup_system("h2", "0.74")
    t = zero_amplitudes(space)
    for mode in ("exact-exponential", "disentangled-product"):
        assert np.array_equal(state_anti_hermitian_exp(t, space, mode=mode),
                              reference_state(space))


def test_single_term_modes_agree():
    # with one nonzero amplitude the product form is the exact exponential
    _, space, _ = setup_system("h2", "0.74")
    index_map = sz_excitation_map(space)
    for pos in (0, len(index_map) - 1):
        values = np.zeros(len(index_map))
        values[pos] = 0.37
        t = AmplitudeVector(values, index_map)
        exact = state_anti_hermitian_exp(t, space, mode="exact-exponential")
        product = state_anti_hermitian_exp(t, space, mode="disentangled-product")
        assert np.allclose(exact, product, atol=1e-12)


def test_disentangled_matches_factor_expm_oracle():
    _, space, _ = setup_system("h2", "0.74")
    t = random_t(space, seed=7, scale=0.5)
    ordering = tuple(reversed(range(len(t.index_map))))
    psi = state_anti_hermitian_exp(t, space, mode="disentangled-product",
                                   ordering=ordering)
    oracle = reference_state(space)
    for pos in ordering:
        single = t.with_values(np.where(np.arange(len(t.values)) == pos,
                                        t.values, 0.0))
        K = build_cluster_operator(single, space).toarray()
        oracle = scipy.linalg.expm((K - K.T) / 2.0) @ oracle
    assert np.allclose(psi, oracle, atol=1e-12)


def test_ordering_validation():
    _, space, _ = setup_system("h2", "0.74")
    t = random_t(space, seed=8)
    with pytest.raises(ValueError, match="not a permutation"):
        state_anti_hermitian_exp(t, space, mode="disentangled-product",
                                 ordering=(0,) * len(t.index_map))


def test_trotter_zero_amplitudes():
    _, space, _ = setup_system("h2", "0.74")
    t = zero_amplitudes(space)
    assert np.allclose(state_trotter_vcc(t, space), reference_state(space),
                       atol=1e-15)


def test_trotter_split_error_is_second_order():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=9, scale=0.6)
    errors = []
    for s in (0.1, 0.05, 0.025):
        scaled = t.with_values(s * t.values)
        split = state_trotter_vcc(scaled, space)
        exact = state_exact_vcc(scaled, space)
        errors.append(np.linalg.norm(split - exact))
    assert 3.2 < errors[0] / errors[1] < 4.8
    assert 3.2 < errors[1] / errors[2] < 4.8


def test_hcvcc_zero_amplitudes():
    _, space, _ = setup_system("h2", "0.74")
    t = zero_amplitudes(space)
    for d in (0, 3):
        assert np.allclose(state_hcvcc(t, space, d), reference_state(space),
                           atol=1e-15)


def test_hcvcc_high_degree_matches_trotter():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=10, scale=0.3)
    trotter = state_trotter_vcc(t, space)
    approx = state_hcvcc(t, space, 25)
    assert np.linalg.norm(approx - trotter) < 1e-9


def test_hcvcc_normalization_override():
    _, space, _ = setup_system("h2", "0.74")
    t = random_t(space, seed=11, scale=0.3)
    _, herm = split_hermitian(build_cluster_operator(t, space))
    kappa = spectral_norm(herm)
    trotter = state_trotter_vcc(t, space)
    default = state_hcvcc(t, space, 30)
    loose = state_hcvcc(t, space, 30, normalization=2.0 * kappa)
    assert np.linalg.norm(default - trotter) < 1e-10
    assert np.linalg.norm(loose - trotter) < 1e-10


def test_energy_rayleigh_fci_eigenvector():
    _, space, H = setup_system("h4", "1.00")
    e_fci, vec = fci_ground_energy(H, space)
    assert abs(energy_rayleigh(vec, H).energy - e_fci) < 1e-10


def test_energy_rayleigh_scaling_invariance():
    _, space, H = setup_system("h2", "0.74")
    t = random_t(space, seed=12, scale=0.2)
    psi = state_exact_vcc(t, space)
    base = energy_rayleigh(psi, H).energy
    for alpha in (2.0, -1.0, 3.0j):
        scaled = energy_rayleigh(alpha * psi, H)
        assert abs(scaled.energy - base) < 1e-12
        assert abs(scaled.norm_squared
                   - abs(alpha) ** 2 * np.vdot(psi, psi).real) < 1e-10


def test_energy_rayleigh_rejects_collapsed_state():
    _, space, H = setup_system("h2", "0.74")
    with pytest.raises(ValueError, match="too small for a quotient"):
        energy_rayleigh(np.zeros(space.dimension), H)


def test_energy_report_carries_metadata():
    _, space, H = setup_system("h2", "0.74")
    spec = AnsatzSpec("exact-VCC")
    t = zero_amplitudes(space)
    report = energy_rayleigh(reference_state(space), H, method=spec,
                             amplitudes=t)
    assert report.method is spec
    assert report.amplitudes is t


def test_projective_cc_zero_amplitudes_is_hf():
    _, space, H = setup_system("h2", "0.74")
    t = zero_amplitudes(space)
    assert abs(energy_projective_cc(t, space, H)
               - hf_energy(H, space)) < 1e-14


def test_projective_cc_equals_reference_projection():
    _, space, H = setup_system("h4", "1.00")
    t = random_t(space, seed=13, scale=0.2)
    # <ref| e^{-T} H e^T |ref> reduces to <ref| H e^T |ref>
    oracle = float(reference_state(space)
                   @ (H.entries @ state_exact_vcc(t, space)))
    assert abs(energy_projective_cc(t, space, H) - oracle) < 1e-12


def test_states_are_deterministic():
    _, space, _ = setup_system("h4", "1.00")
    t = random_t(space, seed=14, scale=0.3)
    for build in (
        lambda: state_exact_vcc(t, space),
        lambda: state_cvcc(t, space, 3),
        lambda: state_trotter_vcc(t, space),
        lambda: state_hcvcc(t, space, 4),
    ):
        assert np.array_equal(build(), build())


@pytest.mark.parametrize("seed", [21, 22, 23])
def test_rayleigh_energies_bounded_by_fci(seed):
    _, space, H = setup_system("h4", "1.00")
    e_fci, _ = fci_ground_energy(H, space)
    t = random_t(space, seed=seed, scale=0.3)
    states = [
        state_exact_vcc(t, space),
        state_cvcc(t, space, 2),
        state_trotter_vcc(t, space),
        state_hcvcc(t, space, 2),
        state_anti_hermitian_exp(t, space),
    ]
    for psi in states:
        assert energy_rayleigh(psi, H).energy >= e_fci - 1e-9
