"""Purity and concurrence of the two-atom reduced state.

Concurrence comes in two independent forms: the amplitude shortcut valid for
the sector-confined states produced here, and the general Wootters measure
for any two-qubit density matrix.  The Wootters eigenvalues are computed in
factored form: with rho = L L^H (pivoted Cholesky) the four lambda_j are the
singular values of K = L^T (sigma_y x sigma_y) L, obtained from the Hermitian
dilation of K with the in-repo Jacobi solver.  This is algebraically the same
as the square roots of the eigenvalues of rho * rho~, but exact zeros stay at
rounding level instead of inflating to sqrt(eps).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .dynamics import AmplitudeState, ReducedDensity
from .spectrum import eigensolve_batch

__all__ = [
    "CPPoint",
    "NotAStateError",
    "purity",
    "purity_batch",
    "concurrence_wootters",
    "concurrence_wootters_batch",
    "concurrence_x_batch",
    "concurrence_from_amplitudes",
    "concurrence_argument",
]

_PSD_TOL = 1e-10
_RANK_TOL = 1e-14
_TRACE_TOL = 1e-8

# sigma_y (x) sigma_y in the product basis (|-->, |-+>, |+->, |++>)
_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


class NotAStateError(ValueError):
    """Input fails the density-matrix preconditions beyond tolerance."""


class CPPoint(NamedTuple):
    """A point in the concurrence-purity plane."""

    purity: float
    concurrence: float


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, ReducedDensity):
        return rho.rho
    return np.asarray(rho, dtype=complex)


def purity(rho) -> float:
    """Tr rho^2 of the two-atom state (1 pure, 1/4 maximally mixed)."""
    m = _as_matrix(rho)
    return float(np.einsum("ij,ji->", m, m).real)


def purity_batch(rhos: np.ndarray) -> np.ndarray:
    """Tr rho^2 over a batch (N, 4, 4)."""
    r = np.asarray(rhos, dtype=complex)
    return np.einsum("kij,kji->k", r, r).real


def concurrence_x_batch(rhos: np.ndarray) -> np.ndarray:
    """Concurrence over a batch of matrices with the sector sparsity pattern
    (diagonal plus the (2,3) coherence): 2 max(0, |rho_23| - sqrt(rho_11 rho_44)).
    Valid only for that pattern; the general route is concurrence_wootters_batch."""
    r = np.asarray(rhos, dtype=complex)
    off = np.abs(r[:, 1, 2])
    corner = np.sqrt(np.clip(r[:, 0, 0].real * r[:, 3, 3].real, 0.0, None))
    return 2.0 * np.maximum(0.0, off - corner)


def _factor_states(rhos: np.ndarray):
    """Batched pivoted-Cholesky factors: rhos[k] = L[k] @ L[k]^H.

    Tiny negative pivots (> -1e-10) are clamped by rank termination; anything
    more negative marks the state bad.  Column order follows the pivots, which
    is irrelevant downstream.
    """
    nmat = rhos.shape[0]
    r = rhos.copy()
    ell = np.zeros((nmat, 4, 4), dtype=complex)
    used = np.zeros((nmat, 4), dtype=bool)
    active = np.ones(nmat, dtype=bool)
    bad = np.zeros(nmat, dtype=bool)
    rows = np.arange(nmat)
    for step in range(4):
        diag = np.einsum("kii->ki", r).real
        bad |= np.min(diag, axis=1) < -_PSD_TOL
        masked = np.where(used, -np.inf, diag)
        idx = np.argmax(masked, axis=1)
        piv = masked[rows, idx]
        take = active & ~bad & (piv > _RANK_TOL)
        active = take
        if not take.any():
            break
        col = r[rows, :, idx] / np.sqrt(np.where(take, piv, 1.0))[:, None]
        col = np.where(take[:, None], col, 0.0)
        ell[:, :, step] = col
        r = r - col[:, :, None] * col[:, None, :].conj()
        used[rows, idx] |= take
    bad |= np.min(np.einsum("kii->ki", r).real, axis=1) < -_PSD_TOL
    # Unfactored residual above tolerance means indefiniteness the pivots
    # never saw (negativity can hide in off-diagonals of a tiny-diagonal tail).
    bad |= np.max(np.abs(r), axis=(1, 2)) > _PSD_TOL
    return ell, bad


def _singular_values_desc(mats: np.ndarray) -> np.ndarray:
    """Singular values (descending) of a batch of complex 4x4 matrices via the
    real embedding of the Hermitian dilation and the Jacobi solver."""
    nmat = mats.shape[0]
    dil = np.zeros((nmat, 8, 8), dtype=complex)
    dil[:, :4, 4:] = mats
    dil[:, 4:, :4] = mats.conj().transpose(0, 2, 1)
    emb = np.zeros((nmat, 16, 16))
    emb[:, :8, :8] = dil.real
    emb[:, 8:, 8:] = dil.real
    emb[:, :8, 8:] = -dil.imag
    emb[:, 8:, :8] = dil.imag
    evals, _ = eigensolve_batch(emb)
    # 16 eigenvalues = {+-sigma_j, each doubled}; every sigma appears 4 times
    mags = np.sort(np.abs(evals), axis=1)[:, ::-1]
    return mags[:, 0::4]


def concurrence_wootters_batch(rhos: np.ndarray) -> np.ndarray:
    """Wootters concurrence for a batch (N, 4, 4) of density matrices."""
    r = np.asarray(rhos, dtype=complex)
    if r.ndim != 3 or r.shape[1:] != (4, 4):
        raise ValueError(f"expected a batch of 4x4 matrices, got shape {r.shape}")
    traces = np.einsum("kii->k", r)
    if np.max(np.abs(traces - 1.0)) > _TRACE_TOL:
        raise NotAStateError("trace differs from 1 beyond tolerance")
    herm = np.max(np.abs(r - r.conj().transpose(0, 2, 1)))
    if herm > _PSD_TOL:
        raise NotAStateError("matrix is not Hermitian within tolerance")
    r = 0.5 * (r + r.conj().transpose(0, 2, 1))
    ell, bad = _factor_states(r)
    if bad.any():
        raise NotAStateError("matrix is not positive semidefinite within tolerance")
    k = ell.transpose(0, 2, 1) @ _YY @ ell
    lam = _singular_values_desc(k)
    return np.maximum(0.0, lam[:, 0] - lam[:, 1] - lam[:, 2] - lam[:, 3])


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of a single two-qubit density matrix."""
    return float(concurrence_wootters_batch(_as_matrix(rho)[None])[0])


def concurrence_argument(state: AmplitudeState) -> float:
    """The pre-clip combination 2|B2||B3| - 2|B1||B4| of the sector amplitudes."""
    m = np.abs(state.b)
    return float(2.0 * m[1] * m[2] - 2.0 * m[0] * m[3])


def concurrence_from_amplitudes(state: AmplitudeState) -> float:
    """Concurrence of the sector-confined state: Max{0, 2|B2||B3| - 2|B1||B4|}."""
    return max(0.0, concurrence_argument(state))
