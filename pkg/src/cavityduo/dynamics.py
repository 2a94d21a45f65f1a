"""Time evolution of sector amplitudes and the two-atom reduced state.

An initial state confined to one excitation sector stays there, so evolution
is a d <= 4 unitary: b(t) = V exp(-i E t) V^T b(0) from the block's spectral
decomposition.  `evolve_oracle` integrates the Schroedinger equation with an
adaptive Runge-Kutta scheme instead and exists purely to cross-check the
spectral route.  Amplitudes are stored as length-4 vectors in the sector
basis; components outside the physical dimension stay exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .model import ModelParams, build_block, sector_dimension
from .spectrum import spectral_decompose

__all__ = [
    "InitialState",
    "AmplitudeState",
    "ReducedDensity",
    "evolve",
    "evolve_series",
    "evolve_oracle",
    "evolve_oracle_series",
    "reduced_density",
    "reduced_density_series",
]

_NORM_TOL = 1e-12
_ZERO_TOL = 1e-12


def _check_sector_pattern(n: int, b: np.ndarray, tol: float) -> None:
    d = sector_dimension(n)
    if np.max(np.abs(b[d:]), initial=0.0) > tol:
        raise ValueError(f"components beyond the sector dimension {d} must vanish for n={n}")


@dataclass(frozen=True, eq=False)
class InitialState:
    """Unit-norm amplitudes over the sector-n basis at t = 0."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.amplitudes, dtype=complex)
        if b.shape != (4,):
            raise ValueError(f"amplitudes must be a complex 4-vector, got shape {b.shape}")
        if abs(np.vdot(b, b).real - 1.0) > _NORM_TOL:
            raise ValueError("initial amplitudes must have unit norm")
        _check_sector_pattern(self.n, b, _ZERO_TOL)
        object.__setattr__(self, "amplitudes", b)
        b.setflags(write=False)

    @classmethod
    def alpha_family(cls, n: int, alpha: float) -> "InitialState":
        """Photon number state with the atoms in cos(a)|-+> + sin(a)|+->."""
        if n < 0:
            raise ValueError("the alpha family needs the |n,-+> and |n,+-> states, so n >= 0")
        return cls(n, np.array([0.0, np.cos(alpha), np.sin(alpha), 0.0], dtype=complex))

    @classmethod
    def ground_photon(cls, n: int) -> "InitialState":
        """Both atoms in the ground state, n + 1 photons."""
        return cls(n, np.array([1.0, 0.0, 0.0, 0.0], dtype=complex))

    @classmethod
    def excited_pair(cls, n: int) -> "InitialState":
        """Both atoms excited, n - 1 photons (needs n >= 1)."""
        if n < 1:
            raise ValueError("the doubly-excited state |n-1,++> needs n >= 1")
        return cls(n, np.array([0.0, 0.0, 0.0, 1.0], dtype=complex))


@dataclass(frozen=True, eq=False)
class AmplitudeState:
    """Sector amplitudes at time t (unit norm up to evolution rounding)."""

    t: float
    b: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.b, dtype=complex)
        if b.shape != (4,):
            raise ValueError(f"amplitudes must be a complex 4-vector, got shape {b.shape}")
        if abs(np.vdot(b, b).real - 1.0) > 1e-10:
            raise ValueError("amplitudes lost unit norm beyond tolerance")
        object.__setattr__(self, "b", b)
        b.setflags(write=False)


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    """Two-atom density matrix in the basis (|-->, |-+>, |+->, |++>)."""

    rho: np.ndarray

    def __post_init__(self) -> None:
        if self.rho.shape != (4, 4):
            raise ValueError(f"reduced density matrix must be 4x4, got {self.rho.shape}")
        self.rho.setflags(write=False)


def evolve_series(params: ModelParams, init: InitialState, times: np.ndarray) -> np.ndarray:
    """Amplitudes b(t) for every t in `times`, shape (len(times), 4)."""
    ts = np.asarray(times, dtype=float)
    if not np.all(np.isfinite(ts)):
        raise ValueError("times must be finite")
    dec = spectral_decompose(params, init.n)
    d = dec.energies.shape[0]
    coeff = dec.vectors.T @ init.amplitudes[:d]
    phases = np.exp(-1j * np.outer(ts, dec.energies))
    out = np.zeros((ts.shape[0], 4), dtype=complex)
    out[:, :d] = (phases * coeff) @ dec.vectors.T
    return out


def evolve(params: ModelParams, init: InitialState, t: float) -> AmplitudeState:
    """Spectral propagation of `init` to time t."""
    b = evolve_series(params, init, np.array([float(t)]))[0]
    return AmplitudeState(float(t), b)


def evolve_oracle_series(params: ModelParams, init: InitialState, times: np.ndarray, rtol: float = 1e-12, atol: float = 1e-13) -> np.ndarray:
    """Adaptive Runge-Kutta integration of i db/dt = H b sampled on a
    nondecreasing time grid, for cross-checking the spectral route."""
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size == 0 or ts[0] < 0.0 or np.any(np.diff(ts) < 0.0):
        raise ValueError("times must be a nondecreasing 1-d grid starting at t >= 0")
    h = build_block(params, init.n).matrix
    d = h.shape[0]
    out = np.zeros((ts.size, 4), dtype=complex)
    if ts[-1] == 0.0:
        out[:] = init.amplitudes
        return out

    def rhs(_t, y):
        return -1j * (h @ y)

    sol = solve_ivp(rhs, (0.0, float(ts[-1])), init.amplitudes[:d].astype(complex), method="DOP853", t_eval=ts, rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"integrator failed: {sol.message}")
    out[:, :d] = sol.y.T
    return out


def evolve_oracle(params: ModelParams, init: InitialState, t: float, rtol: float = 1e-12, atol: float = 1e-13) -> AmplitudeState:
    """Adaptive Runge-Kutta integration of i db/dt = H b, for cross-checking."""
    b = evolve_oracle_series(params, init, np.array([float(t)]), rtol=rtol, atol=atol)[0]
    return AmplitudeState(float(t), b)


def reduced_density_series(amplitudes: np.ndarray) -> np.ndarray:
    """Reduced density matrices, shape (T, 4, 4), for a batch of amplitude rows."""
    b = np.asarray(amplitudes, dtype=complex)
    if b.ndim != 2 or b.shape[1] != 4:
        raise ValueError(f"expected amplitudes of shape (T, 4), got {b.shape}")
    rho = np.zeros((b.shape[0], 4, 4), dtype=complex)
    idx = np.arange(4)
    rho[:, idx, idx] = np.abs(b) ** 2
    rho[:, 1, 2] = b[:, 1] * np.conj(b[:, 2])
    rho[:, 2, 1] = b[:, 2] * np.conj(b[:, 1])
    return rho


def reduced_density(state: AmplitudeState) -> ReducedDensity:
    """Trace out the cavity: photon numbers differ between basis states except
    for the middle pair, so only the (2,3) coherence survives."""
    return ReducedDensity(reduced_density_series(state.b[None])[0])
