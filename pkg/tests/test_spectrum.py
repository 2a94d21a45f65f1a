import math

import numpy as np
import pytest

from cavityduo.model import ModelParams, build_block
from cavityduo.spectrum import (
    ConditioningError,
    DegenerateError,
    characteristic_coefficients,
    charpoly_residual,
    closed_form_batch,
    closed_form_eigenvalues,
    closed_form_eigenvectors,
    eigensolve_batch,
    oracle_eigensolve,
    quartic_invariants,
    spectral_decompose,
)


def test_invariants_vanish_for_zero_couplings():
    inv = quartic_invariants(ModelParams(0, 0, 0, 0, 0, 0), 1)
    assert (inv.p, inv.q, inv.r, inv.s, inv.t, inv.u) == (0, 0, 0, 0, 0, 0)


def test_invariants_direct_substitution():
    inv = quartic_invariants(ModelParams(0, 0, 1, 1, 0, 0), 1)
    assert inv.r == pytest.approx(4.0, abs=1e-15)
    assert inv.q == 0.0
    assert inv.s == pytest.approx(-8.0, abs=1e-12)
    assert inv.t == pytest.approx(4.0, abs=1e-12)


def test_resolvent_root_satisfies_cubic():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = ModelParams(*rng.uniform(-2, 2, 6))
        n = int(rng.integers(1, 11))
        inv = quartic_invariants(p, n)
        assert inv.r >= 0.0  # 2/3 of a sum of squares
        residual = inv.u**3 - 3.0 * inv.t * inv.u - 2.0 * inv.s
        scale = 1.0 + abs(inv.u) ** 3 + abs(inv.t * inv.u) + abs(inv.s)
        assert abs(residual) / scale < 1e-9


def test_conditioning_error_on_degenerate_inputs():
    with pytest.raises(ConditioningError):
        closed_form_eigenvalues(ModelParams(0, 0, 0, 0, 0, 0), 1)
    with pytest.raises(ConditioningError):
        closed_form_eigenvalues(ModelParams(0, 0, 1, 1, 0, 0), 3)


def test_closed_form_matches_oracle_on_random_draws():
    rng = np.random.default_rng(5)
    draws = rng.uniform(-2, 2, size=(1000, 6))
    ns = rng.integers(1, 11, size=1000)
    energies, vectors, blocks, ok = closed_form_batch(*draws.T, ns)
    ref_e, ref_v = eigensolve_batch(blocks)
    scale = 1.0 + np.max(np.abs(blocks), axis=(1, 2))
    assert ok.mean() > 0.99
    assert np.max(np.max(np.abs(energies - ref_e), axis=1)[ok] / scale[ok]) < 1e-9


def test_eigenvector_degenerate_error():
    p = ModelParams(0, 0, 1, 1, 0, 0)
    doublet = np.array([-math.sqrt(6.0), 0.0, 0.0, math.sqrt(6.0)])
    with pytest.raises(DegenerateError):
        closed_form_eigenvectors(p, 1, doublet)


def test_eigenvector_residuals_generic_draw():
    p = ModelParams(0.3, -0.1, 1.0, 0.7, 0.2, 0.1)
    e = closed_form_eigenvalues(p, 2)
    v = closed_form_eigenvectors(p, 2, e)
    h = build_block(p, 2).matrix
    assert np.max(np.abs(h @ v - v * e)) < 1e-9
    assert np.max(np.abs(v.T @ v - np.eye(4))) < 1e-10


def test_eigenvector_orthogonality_random():
    rng = np.random.default_rng(9)
    for _ in range(50):
        p = ModelParams(*rng.uniform(-2, 2, 6))
        n = int(rng.integers(1, 8))
        try:
            e = closed_form_eigenvalues(p, n)
            v = closed_form_eigenvectors(p, n, e)
        except (ConditioningError, DegenerateError):
            continue
        assert np.max(np.abs(v.T @ v - np.eye(4))) < 1e-10


def test_oracle_trivial_cases():
    zero = oracle_eigensolve(build_block(ModelParams(0, 0, 0, 0, 0, 0), 2))
    assert np.all(zero.energies == 0.0)
    assert np.array_equal(zero.vectors, np.eye(4))

    evals, vecs = eigensolve_batch(np.diag([1.0, 2.0, 3.0, 4.0])[None])
    assert np.array_equal(evals[0], [1.0, 2.0, 3.0, 4.0])
    assert np.array_equal(vecs[0], np.eye(4))


def test_oracle_three_level_sector():
    dec = oracle_eigensolve(build_block(ModelParams(0, 0, 1, 1, 0, 0), 0))
    assert np.allclose(dec.energies, [-math.sqrt(2), 0.0, math.sqrt(2)], atol=1e-14)


def test_oracle_off_diagonal_convergence():
    rng = np.random.default_rng(13)
    mats = rng.normal(size=(100, 4, 4))
    mats = mats + mats.transpose(0, 2, 1)
    evals, vecs = eigensolve_batch(mats)
    recon = np.einsum("kij,kj,klj->kil", vecs, evals, vecs)
    fro = np.sqrt((mats**2).sum(axis=(1, 2)))
    assert np.max(np.abs(recon - mats) / fro[:, None, None]) < 1e-13


def test_decompose_stationary_sector():
    p = ModelParams(0.3, -0.1, 1.0, 0.7, 0.2, 0.1)
    dec = spectral_decompose(p, -1)
    assert dec.energies.shape == (1,)
    assert dec.energies[0] == pytest.approx(p.ising - p.delta1 - p.delta2, abs=0)
    assert dec.vectors[0, 0] == 1.0


def test_decompose_falls_back_on_symmetric_degeneracy():
    dec = spectral_decompose(ModelParams(0, 0, 1, 1, 0, 0), 1)
    assert dec.method == "iterative_fallback"
    assert np.allclose(dec.energies, [-math.sqrt(6), 0.0, 0.0, math.sqrt(6)], atol=1e-13)
    h = build_block(ModelParams(0, 0, 1, 1, 0, 0), 1).matrix
    assert np.max(np.abs(h @ dec.vectors - dec.vectors * dec.energies)) < 1e-9 * (1 + np.max(np.abs(h)))


def test_decompose_generic_uses_closed_form():
    p = ModelParams(0.3, -0.1, 1.0, 0.7, 0.2, 0.1)
    dec = spectral_decompose(p, 2)
    assert dec.method == "closed_form"
    oracle = oracle_eigensolve(build_block(p, 2))
    assert np.max(np.abs(dec.energies - oracle.energies)) < 1e-9 * (1 + np.max(np.abs(dec.energies)))


def test_root_property_and_trace_identities():
    rng = np.random.default_rng(17)
    for _ in range(50):
        p = ModelParams(*rng.uniform(-2, 2, 6))
        n = int(rng.integers(1, 11))
        dec = spectral_decompose(p, n)
        h = build_block(p, n).matrix
        hmax = np.max(np.abs(h))
        for e in dec.energies:
            assert charpoly_residual(h, float(e)) < 1e-8 * (1.0 + hmax**4)
        assert abs(dec.energies.sum()) < 1e-9 * (1.0 + hmax)
        coeffs = characteristic_coefficients(h)
        e2_direct = coeffs[2]  # second elementary symmetric function
        e2_spec = sum(
            dec.energies[i] * dec.energies[j] for i in range(4) for j in range(i + 1, 4)
        )
        assert abs(e2_spec - e2_direct) < 1e-9 * (1.0 + hmax**2)


def test_eigenvalue_ordering_and_sign_convention():
    rng = np.random.default_rng(23)
    for _ in range(20):
        p = ModelParams(*rng.uniform(-2, 2, 6))
        dec = spectral_decompose(p, int(rng.integers(-1, 6)))
        assert np.all(np.diff(dec.energies) >= 0.0)
        for col in dec.vectors.T:
            assert col[np.argmax(np.abs(col))] >= 0.0
