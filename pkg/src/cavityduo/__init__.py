"""Exact spectra, dynamics and entanglement for two interacting two-level
atoms coupled to one cavity mode.

The conserved excitation number splits the Hamiltonian into blocks of
dimension at most four.  Each block is diagonalized in closed form with an
independent Jacobi-solver fallback; sector states evolve spectrally, and the
two-atom reduced state yields purity and concurrence, including closed-form
time solutions and concurrence-purity-plane curves for the symmetric case.
"""

from .dynamics import (
    AmplitudeState,
    InitialState,
    ReducedDensity,
    evolve,
    evolve_oracle,
    evolve_oracle_series,
    evolve_series,
    reduced_density,
    reduced_density_series,
)
from .entanglement import (
    CPPoint,
    NotAStateError,
    concurrence_argument,
    concurrence_from_amplitudes,
    concurrence_wootters,
    concurrence_wootters_batch,
    purity,
)
from .model import ModelParams, SectorBlock, build_block, sector_dimension
from .spectrum import (
    ConditioningError,
    DegenerateError,
    QuarticInvariants,
    SpectralDecomposition,
    closed_form_eigenvalues,
    closed_form_eigenvectors,
    eigensolve_batch,
    oracle_eigensolve,
    quartic_invariants,
    spectral_decompose,
)
from .symmetric import (
    CPCurve,
    CPCurveSet,
    DomainError,
    SymmetricConstants,
    SymmetricParams,
    closed_cp_of_t,
    cp_curves,
    limit_curve_inf,
    mems_frontier,
    p_min,
    werner_line,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeState",
    "CPCurve",
    "CPCurveSet",
    "CPPoint",
    "ConditioningError",
    "DegenerateError",
    "DomainError",
    "InitialState",
    "ModelParams",
    "NotAStateError",
    "QuarticInvariants",
    "ReducedDensity",
    "SectorBlock",
    "SpectralDecomposition",
    "SymmetricConstants",
    "SymmetricParams",
    "build_block",
    "closed_cp_of_t",
    "closed_form_eigenvalues",
    "closed_form_eigenvectors",
    "concurrence_argument",
    "concurrence_from_amplitudes",
    "concurrence_wootters",
    "concurrence_wootters_batch",
    "cp_curves",
    "eigensolve_batch",
    "evolve",
    "evolve_oracle",
    "evolve_oracle_series",
    "evolve_series",
    "limit_curve_inf",
    "mems_frontier",
    "oracle_eigensolve",
    "p_min",
    "purity",
    "quartic_invariants",
    "reduced_density",
    "reduced_density_series",
    "sector_dimension",
    "spectral_decompose",
    "werner_line",
]
