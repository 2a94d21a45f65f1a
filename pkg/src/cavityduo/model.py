"""Physical parameters, excitation sectors and block Hamiltonians.

Two two-level atoms couple to a single cavity mode (rotating-wave form,
interaction picture, hbar = 1).  The total excitation number is conserved,
so the Hamiltonian splits into blocks of dimension at most 4, labelled by
the integer sector n >= -1.  Basis order inside a sector:

    |n+1, --> , |n, -+> , |n, +-> , |n-1, ++>

All energies are relative; the cavity frequency is absorbed by the frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["ModelParams", "SectorBlock", "build_block", "sector_dimension"]


def sector_dimension(n: int) -> int:
    """Dimension of the excitation sector n: 4 for n >= 1, 3 for n = 0, 1 for n = -1."""
    if n < -1:
        raise ValueError(f"sector index must be >= -1, got {n}")
    if n == -1:
        return 1
    if n == 0:
        return 3
    return 4


@dataclass(frozen=True)
class ModelParams:
    """The six couplings: detunings, atom-cavity couplings, dipole exchange, Ising.

    Negative atom-cavity couplings are normalized to g >= 0 by a local phase
    flip of the corresponding excited state.  That flip also reverses the
    dipole exchange term, so kappa is negated when exactly one coupling is
    flipped; the flags record what happened so eigenvector phases can be
    mapped back to the original convention.  Spectra are unaffected.
    """

    delta1: float = 0.0
    delta2: float = 0.0
    g1: float = 1.0
    g2: float = 1.0
    kappa: float = 0.0
    ising: float = 0.0
    g1_flipped: bool = field(init=False, default=False)
    g2_flipped: bool = field(init=False, default=False)

    def __post_init__(self) -> None:
        values = (self.delta1, self.delta2, self.g1, self.g2, self.kappa, self.ising)
        if not all(math.isfinite(float(v)) for v in values):
            raise ValueError(f"model parameters must be finite, got {values}")
        for name in ("delta1", "delta2", "g1", "g2", "kappa", "ising"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.g1 < 0.0:
            object.__setattr__(self, "g1", -self.g1)
            object.__setattr__(self, "kappa", -self.kappa)
            object.__setattr__(self, "g1_flipped", True)
        if self.g2 < 0.0:
            object.__setattr__(self, "g2", -self.g2)
            object.__setattr__(self, "kappa", -self.kappa)
            object.__setattr__(self, "g2_flipped", True)


@dataclass(frozen=True, eq=False)
class SectorBlock:
    """One excitation-sector block of the Hamiltonian (real symmetric, d <= 4)."""

    n: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        d = sector_dimension(self.n)
        if self.matrix.shape != (d, d):
            raise ValueError(f"sector {self.n} block must be {d}x{d}, got {self.matrix.shape}")
        self.matrix.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def build_block(params: ModelParams, n: int) -> SectorBlock:
    """Assemble the sector-n block in the fixed basis order.

    The 4x4 form is evaluated with sqrt(n) = 0 at n = 0, where the fourth
    basis state does not exist; its row/column then carries only a diagonal
    entry, and the physical 3x3 submatrix is returned.  n = -1 is the single
    stationary state with energy ising - delta1 - delta2.
    """
    d = sector_dimension(n)
    d1, d2 = params.delta1, params.delta2
    g1, g2 = params.g1, params.g2
    k, j = params.kappa, params.ising
    if d == 1:
        return SectorBlock(n, np.array([[j - d1 - d2]]))
    rn = math.sqrt(n) if n > 0 else 0.0
    rn1 = math.sqrt(n + 1)
    h = np.zeros((4, 4))
    h[0, 0] = j - d1 - d2
    h[1, 1] = d2 - d1 - j
    h[2, 2] = d1 - d2 - j
    h[3, 3] = j + d1 + d2
    h[0, 1] = h[1, 0] = g2 * rn1
    h[0, 2] = h[2, 0] = g1 * rn1
    h[1, 2] = h[2, 1] = 2.0 * k
    h[1, 3] = h[3, 1] = g1 * rn
    h[2, 3] = h[3, 2] = g2 * rn
    return SectorBlock(n, np.ascontiguousarray(h[:d, :d]))
