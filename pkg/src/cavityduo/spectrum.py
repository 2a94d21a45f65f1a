"""Diagonalization of the sector blocks.

Two independent routes are provided.  The closed-form route evaluates the
depressed-quartic root formulas and the matching unnormalized eigenvector
expressions; it is fast but undefined at spectral degeneracies and poorly
conditioned when the leading resolvent combination r + u vanishes.  The
iterative route is a cyclic Jacobi rotation solver written here (no external
eigensolver), valid for any small real symmetric matrix.  `spectral_decompose`
tries the closed form where it applies, verifies it, and falls back to the
Jacobi solver otherwise, so it is total over valid inputs.

Conventions: eigenvalues ascending; each eigenvector column is normalized
with its largest-magnitude component made positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, SectorBlock, build_block, sector_dimension

__all__ = [
    "QuarticInvariants",
    "SpectralDecomposition",
    "ConditioningError",
    "DegenerateError",
    "ConvergenceError",
    "quartic_invariants",
    "closed_form_eigenvalues",
    "closed_form_eigenvectors",
    "oracle_eigensolve",
    "spectral_decompose",
    "eigensolve_batch",
    "closed_form_batch",
    "characteristic_coefficients",
    "charpoly_residual",
]

# Fallback triggers.  The r+u threshold keeps the 1/sqrt(r+u) term in the
# root formula from amplifying rounding past the residual tolerances below.
COND_THRESHOLD = 1e-10
INNER_CLAMP = 1e-12
GAP_THRESHOLD = 1e-8
VECTOR_NORM_THRESHOLD = 1e-10
RESIDUAL_TOL = 1e-9
ORTHO_TOL = 1e-10
ROOT_RESIDUAL_TOL = 1e-8


class ConditioningError(ValueError):
    """Closed-form roots are ill-conditioned here; use the iterative path."""


class DegenerateError(ValueError):
    """Closed-form eigenvectors vanish on (near-)degenerate subspaces."""


class ConvergenceError(RuntimeError):
    """Jacobi sweep budget exhausted (indicates a bug for d <= 16)."""


@dataclass(frozen=True)
class QuarticInvariants:
    """Coefficient combinations entering the depressed-quartic root formula.

    r is 2/3 of a sum of squares, hence nonnegative.  u is the resolvent
    root, kept real for both signs of s**2 - t**3 by the cube-root branch
    rules documented in `quartic_invariants`.
    """

    p: float
    q: float
    r: float
    s: float
    t: float
    u: float


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthogonal eigenvector columns of one block."""

    energies: np.ndarray
    vectors: np.ndarray
    method: str

    def __post_init__(self) -> None:
        self.energies.setflags(write=False)
        self.vectors.setflags(write=False)


def _invariants_core(d1, d2, g1, g2, k, j, n):
    """Vectorized p, q, r, s, t, u.  All inputs broadcast; outputs are arrays."""
    n = np.asarray(n, dtype=float)
    gp = g1 * g1 + g2 * g2
    gm = g1 * g1 - g2 * g2
    dd = d1 * d1 - d2 * d2
    p = (
        (dd + (n + 1.0) * gm) * (dd + n * gm)
        + j * j * ((2.0 * n + 1.0) * gp - 2.0 * (d1 * d1 + d2 * d2) + j * j - 4.0 * k * k)
        + 2.0 * j * (g1 * g1 * d1 + g2 * g2 * d2 + 2.0 * (2.0 * n + 1.0) * k * g1 * g2)
        + 4.0 * k * (d1 + d2) * (g1 * g2 + k * (d1 + d2))
    )
    q = 4.0 * (g1 * g1 * d2 + g2 * g2 * d1 + 4.0 * j * (k * k - d1 * d2) - 2.0 * (2.0 * n + 1.0) * k * g1 * g2)
    r = (2.0 / 3.0) * ((2.0 * n + 1.0) * gp + 2.0 * (d1 * d1 + d2 * d2 + j * j) + 4.0 * k * k)
    s = 2.0 * p * r + (q * q - r**3) / 8.0
    t = (4.0 / 3.0) * p + r * r / 4.0
    disc = s * s - t**3
    negative = disc < 0.0
    # disc >= 0: sign-preserving real cube roots keep u real.
    # disc < 0 (t > 0 there): conjugate principal cube roots, trigonometric form.
    sq = np.sqrt(np.where(negative, 0.0, disc))
    u_real = np.cbrt(s + sq) + np.cbrt(s - sq)
    theta = np.arctan2(np.sqrt(np.where(negative, -disc, 0.0)), s)
    u_conj = 2.0 * np.sqrt(np.where(negative, t, 1.0)) * np.cos(theta / 3.0)
    u = np.where(negative, u_conj, u_real)
    return p, q, r, s, t, u


def _eigenvalues_core(q, r, u):
    """Quartic roots from the invariants.

    Returns (energies_sorted, ok): ok is False where the conditioning guard
    trips or an inner square-root argument is negative beyond the clamp.
    """
    ru = r + u
    scale = 1.0 + r
    ok = (np.abs(ru) >= COND_THRESHOLD * scale) & (ru > 0.0)
    a = np.sqrt(np.where(ok, ru, 1.0))
    ratio = q / a
    inner_plus = 2.0 * r - u + ratio
    inner_minus = 2.0 * r - u - ratio
    ok = ok & (inner_plus >= -INNER_CLAMP * scale) & (inner_minus >= -INNER_CLAMP * scale)
    bp = np.sqrt(np.clip(inner_plus, 0.0, None))
    bm = np.sqrt(np.clip(inner_minus, 0.0, None))
    energies = np.stack(
        [-0.5 * (a + bp), -0.5 * (a - bp), 0.5 * (a - bm), 0.5 * (a + bm)],
        axis=-1,
    )
    energies = np.sort(energies, axis=-1)
    return energies, ok


def _eigenvectors_raw(d1, d2, g1, g2, k, j, n, energies):
    """Unnormalized eigenvector components, shape (..., 4, 4): column per energy."""
    e = energies
    gp = g1 * g1 + g2 * g2
    gm = g1 * g1 - g2 * g2
    e0 = e - d1 - d2 - j
    v1 = e0 * ((e + j) ** 2 - n * gp - (d1 - d2) ** 2 - 4.0 * k * k) - 2.0 * n * (
        (d1 + j) * g2 * g2 + (d2 + j) * g1 * g1 + 2.0 * k * g1 * g2
    )
    v2 = np.sqrt(n + 1.0) * (2.0 * k * g1 * e0 + g2 * ((e - d1) ** 2 + n * gm - (d2 + j) ** 2))
    v3 = np.sqrt(n + 1.0) * (2.0 * k * g2 * e0 + g1 * ((e - d2) ** 2 - n * gm - (d1 + j) ** 2))
    v4 = np.sqrt(n * (n + 1.0)) * (2.0 * g1 * g2 * (e + j) + 2.0 * k * gp)
    return np.stack([v1, v2, v3, v4], axis=-2)


def _sort_and_fix_signs(energies, vectors):
    """Ascending eigenvalue order; largest-magnitude component of each column positive."""
    idx = np.argsort(energies, axis=-1, kind="stable")
    energies = np.take_along_axis(energies, idx, axis=-1)
    vectors = np.take_along_axis(vectors, idx[..., None, :], axis=-1)
    comp = np.argmax(np.abs(vectors), axis=-2)
    chosen = np.take_along_axis(vectors, comp[..., None, :], axis=-2)
    signs = np.where(chosen >= 0.0, 1.0, -1.0)
    return energies, vectors * signs


def quartic_invariants(params: ModelParams, n: int) -> QuarticInvariants:
    """Invariants of the sector-n characteristic quartic (n >= 1 only)."""
    if sector_dimension(n) != 4:
        raise ValueError(f"quartic invariants are defined for 4x4 sectors (n >= 1), got n={n}")
    p, q, r, s, t, u = _invariants_core(
        params.delta1, params.delta2, params.g1, params.g2, params.kappa, params.ising, n
    )
    return QuarticInvariants(float(p), float(q), float(r), float(s), float(t), float(u))


def closed_form_eigenvalues(params: ModelParams, n: int) -> np.ndarray:
    """The four block eigenvalues from the root formula, sorted ascending.

    Raises ConditioningError when |r + u| falls under the conditioning
    threshold or an inner square-root argument is negative beyond the
    -1e-12 clamp; callers should then use the iterative solver.
    """
    inv = quartic_invariants(params, n)
    energies, ok = _eigenvalues_core(np.float64(inv.q), np.float64(inv.r), np.float64(inv.u))
    if not bool(ok):
        raise ConditioningError(
            f"closed-form roots ill-conditioned for n={n} (r+u={inv.r + inv.u:.3e})"
        )
    return energies


def closed_form_eigenvectors(params: ModelParams, n: int, energies: np.ndarray) -> np.ndarray:
    """Normalized eigenvector columns matching `energies` (n >= 1, nondegenerate).

    Raises DegenerateError when two energies coincide within 1e-8 * scale or
    an unnormalized column vanishes: the component formulas are identically
    zero on degenerate subspaces (and on accidentally decoupled ones).
    """
    if sector_dimension(n) != 4:
        raise ValueError(f"closed-form eigenvectors require a 4x4 sector, got n={n}")
    e = np.asarray(energies, dtype=float)
    if e.shape != (4,):
        raise ValueError(f"expected 4 energies, got shape {e.shape}")
    scale = 1.0 + float(np.max(np.abs(e)))
    gaps = np.diff(np.sort(e))
    if np.min(gaps) < GAP_THRESHOLD * scale:
        raise DegenerateError(f"eigenvalues degenerate within {GAP_THRESHOLD:.0e} * scale")
    raw = _eigenvectors_raw(
        params.delta1, params.delta2, params.g1, params.g2, params.kappa, params.ising, float(n), e
    )
    component_scale = 1.0 + float(np.max(np.abs(raw)))
    norms = np.sqrt((raw * raw).sum(axis=-2))
    if np.min(norms) < VECTOR_NORM_THRESHOLD * component_scale:
        raise DegenerateError("an unnormalized eigenvector column vanished")
    vectors = raw / norms
    _, vectors = _sort_and_fix_signs(e.copy(), vectors)
    return vectors


def _jacobi_batch(mats: np.ndarray, max_sweeps: int = 40):
    """Cyclic Jacobi on a batch of real symmetric matrices (N, d, d).

    Rotations are applied across the whole batch per (p, q) pair; matrices
    already converged get identity rotations.  Off-diagonal Frobenius norm is
    driven below 1e-13 * ||A||_F.
    """
    a = np.array(mats, dtype=float)
    nmat, d, _ = a.shape
    v = np.broadcast_to(np.eye(d), a.shape).copy()
    fro = np.sqrt((a * a).sum(axis=(1, 2)))
    tol = 1e-13 * fro
    # Rotations on elements this far below scale cannot move the off-diagonal
    # norm past tol and would only produce huge tau ratios.
    skip = 1e-15 * fro
    if d == 1:
        return a[:, :, 0], v
    iu, ju = np.triu_indices(d, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * (a[:, iu, ju] ** 2).sum(axis=1))
        if np.all(off <= tol):
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[:, p, q]
                rotate = np.abs(apq) > skip
                if not rotate.any():
                    continue
                tau = np.where(rotate, (a[:, q, q] - a[:, p, p]) / np.where(rotate, 2.0 * apq, 1.0), 0.0)
                sgn = np.where(tau >= 0.0, 1.0, -1.0)
                t = np.where(rotate, sgn / (np.abs(tau) + np.sqrt(1.0 + tau * tau)), 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cc, ss = c[:, None], s[:, None]
                colp, colq = a[:, :, p].copy(), a[:, :, q].copy()
                a[:, :, p] = cc * colp - ss * colq
                a[:, :, q] = ss * colp + cc * colq
                rowp, rowq = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = cc * rowp - ss * rowq
                a[:, q, :] = ss * rowp + cc * rowq
                a[:, p, q] = np.where(rotate, 0.0, a[:, p, q])
                a[:, q, p] = a[:, p, q]
                vp, vq = v[:, :, p].copy(), v[:, :, q].copy()
                v[:, :, p] = cc * vp - ss * vq
                v[:, :, q] = ss * vp + cc * vq
    else:
        raise ConvergenceError(f"Jacobi failed to converge in {max_sweeps} sweeps")
    evals = a[:, np.arange(d), np.arange(d)]
    return _sort_and_fix_signs(evals, v)


def eigensolve_batch(mats: np.ndarray, max_sweeps: int = 40):
    """Jacobi-diagonalize a batch (N, d, d) of real symmetric matrices.

    Returns (eigenvalues (N, d) ascending, eigenvectors (N, d, d) with the
    sign convention applied).  Bulk counterpart of `oracle_eigensolve`.
    """
    a = np.asarray(mats, dtype=float)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected a batch of square matrices, got shape {a.shape}")
    asym = np.max(np.abs(a - a.transpose(0, 2, 1)), initial=0.0)
    if asym > 1e-12 * (1.0 + np.max(np.abs(a), initial=0.0)):
        raise ValueError("matrices must be symmetric")
    return _jacobi_batch(0.5 * (a + a.transpose(0, 2, 1)), max_sweeps=max_sweeps)


def oracle_eigensolve(block: SectorBlock) -> SpectralDecomposition:
    """Full decomposition of one block by the in-repo Jacobi solver."""
    evals, vecs = eigensolve_batch(block.matrix[None])
    return SpectralDecomposition(evals[0], vecs[0], "iterative_fallback")


def characteristic_coefficients(mat: np.ndarray) -> np.ndarray:
    """Monic characteristic-polynomial coefficients [1, c_{d-1}, ..., c_0]
    by the Faddeev-LeVerrier recursion."""
    a = np.asarray(mat, dtype=float)
    d = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    eye = np.eye(d)
    for k in range(1, d + 1):
        m = a @ m + coeffs[-1] * eye
        coeffs.append(-float(np.trace(a @ m)) / k)
    return np.array(coeffs)


def charpoly_residual(mat: np.ndarray, x: float) -> float:
    """|p(x)| for the characteristic polynomial of `mat`, Horner-evaluated."""
    coeffs = characteristic_coefficients(mat)
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return abs(acc)


def _closed_form_verified(h: np.ndarray, energies: np.ndarray, vectors: np.ndarray) -> bool:
    """Residual, orthogonality, trace and root checks for one 4x4 closed-form result."""
    hmax = float(np.max(np.abs(h)))
    if np.max(np.abs(h @ vectors - vectors * energies)) > RESIDUAL_TOL * (1.0 + hmax):
        return False
    if np.max(np.abs(vectors.T @ vectors - np.eye(4))) > ORTHO_TOL:
        return False
    if abs(float(energies.sum())) > RESIDUAL_TOL * (1.0 + hmax):
        return False
    root_tol = ROOT_RESIDUAL_TOL * (1.0 + hmax**4)
    return all(charpoly_residual(h, float(e)) <= root_tol for e in energies)


def spectral_decompose(params: ModelParams, n: int) -> SpectralDecomposition:
    """Diagonalize the sector-n block; closed form where valid, Jacobi otherwise.

    Total over valid inputs: any conditioning, degeneracy or residual failure
    of the closed form routes to the iterative solver, and the `method` tag
    records which path produced the result.
    """
    block = build_block(params, n)
    if block.dimension == 4:
        try:
            energies = closed_form_eigenvalues(params, n)
            vectors = closed_form_eigenvectors(params, n, energies)
        except (ConditioningError, DegenerateError):
            pass
        else:
            if _closed_form_verified(block.matrix, energies, vectors):
                return SpectralDecomposition(energies, vectors, "closed_form")
    return oracle_eigensolve(block)


def closed_form_batch(delta1, delta2, g1, g2, kappa, ising, n):
    """Closed-form eigensystems for a batch of parameter draws.

    Inputs broadcast to shape (N,).  Applies the same coupling-sign
    normalization as ModelParams, then evaluates the root and eigenvector
    formulas for every draw at once.  Returns (energies (N, 4), vectors
    (N, 4, 4), blocks (N, 4, 4), ok (N,)): rows with ok=False tripped a
    conditioning/degeneracy/residual guard and should use `eigensolve_batch`
    on the corresponding block instead.
    """
    d1, d2, g1, g2, k, j, n = (
        np.atleast_1d(a)
        for a in np.broadcast_arrays(
            *(np.asarray(x, dtype=float) for x in (delta1, delta2, g1, g2, kappa, ising)),
            np.asarray(n, dtype=float),
        )
    )
    if np.any(n < 1):
        raise ValueError("closed_form_batch requires n >= 1")
    k = np.where(g1 < 0, -k, k)
    k = np.where(g2 < 0, -k, k)
    g1, g2 = np.abs(g1), np.abs(g2)

    _, q, r, _, _, u = _invariants_core(d1, d2, g1, g2, k, j, n)
    energies, ok = _eigenvalues_core(q, r, u)

    scale = 1.0 + np.max(np.abs(energies), axis=-1)
    ok = ok & (np.min(np.diff(energies, axis=-1), axis=-1) >= GAP_THRESHOLD * scale)

    raw = _eigenvectors_raw(
        d1[:, None], d2[:, None], g1[:, None], g2[:, None], k[:, None], j[:, None], n[:, None], energies
    )
    component_scale = 1.0 + np.max(np.abs(raw), axis=(1, 2))
    norms = np.sqrt((raw * raw).sum(axis=1))
    ok = ok & (np.min(norms, axis=-1) >= VECTOR_NORM_THRESHOLD * component_scale)
    vectors = raw / np.where(norms > 0.0, norms, 1.0)[:, None, :]
    energies, vectors = _sort_and_fix_signs(energies, vectors)

    nmat = energies.shape[0]
    blocks = np.zeros((nmat, 4, 4))
    rn, rn1 = np.sqrt(n), np.sqrt(n + 1.0)
    blocks[:, 0, 0] = j - d1 - d2
    blocks[:, 1, 1] = d2 - d1 - j
    blocks[:, 2, 2] = d1 - d2 - j
    blocks[:, 3, 3] = j + d1 + d2
    blocks[:, 0, 1] = blocks[:, 1, 0] = g2 * rn1
    blocks[:, 0, 2] = blocks[:, 2, 0] = g1 * rn1
    blocks[:, 1, 2] = blocks[:, 2, 1] = 2.0 * k
    blocks[:, 1, 3] = blocks[:, 3, 1] = g1 * rn
    blocks[:, 2, 3] = blocks[:, 3, 2] = g2 * rn

    hmax = np.max(np.abs(blocks), axis=(1, 2))
    residual = np.max(np.abs(blocks @ vectors - vectors * energies[:, None, :]), axis=(1, 2))
    ok = ok & (residual <= RESIDUAL_TOL * (1.0 + hmax))
    ortho = np.max(np.abs(vectors.transpose(0, 2, 1) @ vectors - np.eye(4)), axis=(1, 2))
    ok = ok & (ortho <= ORTHO_TOL)
    return energies, vectors, blocks, ok
