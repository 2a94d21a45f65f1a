import math

import numpy as np
import pytest

from cavityduo.dynamics import (
    AmplitudeState,
    InitialState,
    evolve,
    evolve_oracle,
    evolve_series,
    reduced_density,
    reduced_density_series,
)
from cavityduo.model import ModelParams, sector_dimension
from cavityduo.validation import fock_hamiltonian, partial_trace_atoms, sector_basis_indices


def random_initial(rng, n):
    d = sector_dimension(n)
    b = np.zeros(4, dtype=complex)
    b[:d] = rng.normal(size=d) + 1j * rng.normal(size=d)
    b /= np.linalg.norm(b)
    return InitialState(n, b)


def test_initial_state_constructors():
    bell = InitialState.alpha_family(0, math.pi / 4)
    assert np.allclose(bell.amplitudes, [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])
    assert np.array_equal(InitialState.ground_photon(-1).amplitudes, [1, 0, 0, 0])
    assert np.array_equal(InitialState.excited_pair(3).amplitudes, [0, 0, 0, 1])


def test_initial_state_validation():
    with pytest.raises(ValueError):
        InitialState(0, np.array([0, 1, 0, 0.1], dtype=complex))  # 4th level absent at n=0
    with pytest.raises(ValueError):
        InitialState(1, np.array([1, 1, 0, 0], dtype=complex))  # not normalized
    with pytest.raises(ValueError):
        InitialState.excited_pair(0)
    with pytest.raises(ValueError):
        InitialState.alpha_family(-1, 0.3)


def test_identity_at_t0():
    rng = np.random.default_rng(2)
    params = ModelParams(*rng.uniform(-2, 2, 6))
    init = random_initial(rng, 2)
    out = evolve(params, init, 0.0)
    assert np.max(np.abs(out.b - init.amplitudes)) < 1e-14


def test_full_transfer_to_photon_state():
    # empty cavity, Bell start: at a quarter period everything sits on |1,-->
    st = evolve(ModelParams(), InitialState.alpha_family(0, math.pi / 4), math.pi / (2 * math.sqrt(2)))
    assert abs(st.b[0] + 1j) < 1e-12
    assert np.max(np.abs(st.b[1:])) < 1e-12


def test_unitarity():
    rng = np.random.default_rng(4)
    for _ in range(25):
        params = ModelParams(*rng.uniform(-2, 2, 6))
        n = int(rng.integers(-1, 6))
        init = random_initial(rng, n)
        b = evolve(params, init, float(rng.uniform(-30, 30))).b
        assert abs(np.vdot(b, b).real - 1.0) < 1e-10


def test_spectral_vs_integrator():
    rng = np.random.default_rng(6)
    for _ in range(5):
        params = ModelParams(*rng.uniform(-2, 2, 6))
        init = random_initial(rng, int(rng.integers(0, 5)))
        b_spec = evolve(params, init, 10.0).b
        b_ode = evolve_oracle(params, init, 10.0).b
        assert np.max(np.abs(b_spec - b_ode)) < 1e-8


def test_integrator_trivial_and_norm_drift():
    init = InitialState.alpha_family(1, 0.7)
    frozen = evolve_oracle(ModelParams(0, 0, 0, 0, 0, 0), init, 5.0)
    assert np.max(np.abs(frozen.b - init.amplitudes)) < 1e-10
    params = ModelParams(0.5, -0.3, 1.2, 0.8, 0.6, -0.4)
    b = evolve_oracle(params, init, 100.0).b
    assert abs(np.vdot(b, b).real - 1.0) < 1e-8


def test_composition():
    rng = np.random.default_rng(8)
    params = ModelParams(*rng.uniform(-2, 2, 6))
    init = random_initial(rng, 3)
    t1, t2 = 1.7, 2.9
    once = evolve(params, init, t1 + t2).b
    stepped = evolve(params, InitialState(3, evolve(params, init, t1).b), t2).b
    assert np.max(np.abs(once - stepped)) < 1e-10


def test_sector_confinement_full_space():
    rng = np.random.default_rng(12)
    params = ModelParams(*rng.uniform(-1.5, 1.5, 6))
    n = 2
    ncut = n + 2
    init = random_initial(rng, n)
    h = fock_hamiltonian(params, ncut)
    idx = sector_basis_indices(n, ncut)
    psi0 = np.zeros((ncut + 1) * 4, dtype=complex)
    psi0[idx] = init.amplitudes
    evals, evecs = np.linalg.eigh(h)
    psi_t = evecs @ (np.exp(-1j * evals * 7.3) * (evecs.conj().T @ psi0))
    outside = psi_t.copy()
    outside[idx] = 0.0
    assert np.max(np.abs(outside)) < 1e-12
    assert np.max(np.abs(psi_t[idx] - evolve(params, init, 7.3).b)) < 1e-10


def test_reduced_density_examples():
    pure = reduced_density(AmplitudeState(0.0, np.array([0, 1, 0, 0], dtype=complex)))
    expected = np.zeros((4, 4), dtype=complex)
    expected[1, 1] = 1.0
    assert np.array_equal(pure.rho, expected)

    bell = reduced_density(AmplitudeState(0.0, np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2)))
    assert bell.rho[1, 2] == pytest.approx(0.5, abs=1e-15)
    assert np.trace(bell.rho).real == pytest.approx(1.0, abs=1e-12)

    flat = reduced_density(AmplitudeState(0.0, 0.5 * np.ones(4, dtype=complex)))
    assert np.allclose(np.diag(flat.rho), 0.25)
    assert flat.rho[1, 2] == pytest.approx(0.25, abs=1e-15)
    assert flat.rho[0, 1] == 0.0 and flat.rho[0, 3] == 0.0


def test_reduced_density_matches_partial_trace():
    rng = np.random.default_rng(14)
    for _ in range(10):
        params = ModelParams(*rng.uniform(-1.5, 1.5, 6))
        n = int(rng.integers(0, 4))
        ncut = n + 2
        init = random_initial(rng, n)
        t = float(rng.uniform(0, 12))
        b = evolve(params, init, t).b
        rho = reduced_density(AmplitudeState(t, b)).rho
        h = fock_hamiltonian(params, ncut)
        idx = sector_basis_indices(n, ncut)
        psi0 = np.zeros((ncut + 1) * 4, dtype=complex)
        psi0[idx] = init.amplitudes[: len(idx)]
        evals, evecs = np.linalg.eigh(h)
        psi_t = evecs @ (np.exp(-1j * evals * t) * (evecs.conj().T @ psi0))
        assert np.max(np.abs(rho - partial_trace_atoms(psi_t, ncut))) < 1e-12


def test_reduced_density_invariants():
    rng = np.random.default_rng(16)
    b = rng.normal(size=(50, 4)) + 1j * rng.normal(size=(50, 4))
    b /= np.linalg.norm(b, axis=1)[:, None]
    rhos = reduced_density_series(b)
    assert np.max(np.abs(np.einsum("kii->k", rhos) - 1.0)) < 1e-12
    assert np.max(np.abs(rhos - rhos.conj().transpose(0, 2, 1))) < 1e-12
    # sparsity: only the diagonal and the (2,3) coherence are populated
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = True
    mask[1, 2] = mask[2, 1] = True
    assert np.all(rhos[:, ~mask] == 0.0)
    evals = np.linalg.eigvalsh(rhos)
    assert evals.min() > -1e-10
