"""Closed-form dynamics and CP-plane geometry for the symmetric case.

Equal atom-cavity couplings (g1 = g2 = 1, time in units of the inverse
coupling) and zero detunings leave a three-parameter family: sector n,
initial-state angle alpha, and the two atom-atom strengths kappa (dipole
exchange) and the Ising coupling.  Concurrence and purity then have
explicit time-domain solutions built from the frequency omega_n and the
auxiliary functions F and G.  For non-interacting atoms the time solutions
invert to explicit concurrence-vs-purity branches; reference curves (MEMS
frontier, Werner family, large-n limit) live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import InitialState, evolve_series, reduced_density_series
from .entanglement import CPPoint, concurrence_x_batch, purity_batch
from .model import ModelParams

__all__ = [
    "DomainError",
    "SymmetricParams",
    "SymmetricConstants",
    "CPCurve",
    "CPCurveSet",
    "constants",
    "f_g",
    "closed_cp_of_t",
    "closed_cp_series",
    "pipeline_cp_series",
    "to_model_params",
    "two_branch_threshold",
    "has_upper_branch",
    "branch_values",
    "curve_value",
    "cp_curves",
    "p_min",
    "mems_frontier",
    "werner_line",
    "limit_curve_inf",
]

_EDGE_SLACK = 1e-12


class DomainError(ValueError):
    """Argument outside the validity interval of a curve."""


@dataclass(frozen=True)
class SymmetricParams:
    """Reduced parameter set: sector n >= 0, angle alpha, kappa and Ising strengths."""

    n: int
    alpha: float
    kappa: float = 0.0
    ising: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"symmetric-case sector must have n >= 0, got {self.n}")
        if not (-math.pi / 2 - _EDGE_SLACK <= self.alpha <= math.pi / 2 + _EDGE_SLACK):
            raise ValueError(f"alpha must lie in [-pi/2, pi/2], got {self.alpha}")


@dataclass(frozen=True)
class SymmetricConstants:
    """omega: oscillation frequency; beta, gamma: sector-dependent weights."""

    omega: float
    beta: float
    gamma: float


@dataclass(frozen=True, eq=False)
class CPCurve:
    """Sampled curve in the CP plane with its validity interval in purity."""

    name: str
    p: np.ndarray
    c: np.ndarray
    p_lo: float
    p_hi: float


@dataclass(frozen=True, eq=False)
class CPCurveSet:
    """Concurrence branches plus the reference curves for one parameter set."""

    c_minus: CPCurve
    c_plus: CPCurve | None
    mems: CPCurve
    werner: CPCurve
    limit: CPCurve

    def all_curves(self) -> list[CPCurve]:
        out = [self.c_minus]
        if self.c_plus is not None:
            out.append(self.c_plus)
        out.extend([self.mems, self.werner, self.limit])
        return out


def constants(p: SymmetricParams) -> SymmetricConstants:
    n = p.n
    denom = 4.0 * n * n + 4.0 * n + 1.0
    omega = math.sqrt(4.0 * n + 2.0 + (p.kappa - p.ising) ** 2)
    beta = math.sqrt((4.0 * n * n + 4.0 * n) / denom)
    gamma = (6.0 * n * n + 6.0 * n + 2.0) / denom
    return SymmetricConstants(omega, beta, gamma)


def f_g(p: SymmetricParams, t):
    """The auxiliary time functions (F, G); t may be a scalar or an array."""
    t = np.asarray(t, dtype=float)
    con = constants(p)
    s2a = math.sin(2.0 * p.alpha)
    mix = (p.ising + 3.0 * p.kappa) * t
    wt = con.omega * t
    f = (2.0 * p.n + 1.0) / con.omega**2 * (1.0 + s2a) * np.sin(wt) ** 2
    g = (p.kappa - p.ising) * np.cos(mix) * np.sin(wt) / con.omega + np.sin(mix) * np.cos(wt)
    return f, g


def closed_cp_series(p: SymmetricParams, t):
    """Concurrence and purity over the time grid t, as arrays (C, P)."""
    con = constants(p)
    s2a = math.sin(2.0 * p.alpha)
    c2a = math.cos(2.0 * p.alpha)
    f, g = f_g(p, t)
    c = np.maximum(0.0, np.sqrt((s2a - f) ** 2 + c2a * c2a * g * g) - con.beta * f)
    pur = 1.0 - 2.0 * f + con.gamma * f * f
    return c, pur


def closed_cp_of_t(p: SymmetricParams, t: float) -> CPPoint:
    """Closed-form CP point at a single time."""
    c, pur = closed_cp_series(p, np.array([float(t)]))
    return CPPoint(float(pur[0]), float(c[0]))


def to_model_params(p: SymmetricParams) -> ModelParams:
    """The full parameter set realizing this symmetric case."""
    return ModelParams(0.0, 0.0, 1.0, 1.0, p.kappa, p.ising)


def pipeline_cp_series(p: SymmetricParams, t):
    """CP trajectory through the spectral pipeline (evolve -> reduced state ->
    measures), as arrays (C, P).  Independent of the closed forms above."""
    ts = np.asarray(t, dtype=float)
    init = InitialState.alpha_family(p.n, p.alpha)
    amps = evolve_series(to_model_params(p), init, ts)
    rhos = reduced_density_series(amps)
    return concurrence_x_batch(rhos), purity_batch(rhos)


def two_branch_threshold(n: int) -> float:
    """Angle above which the trajectory crosses the purity-parabola vertex,
    putting both concurrence branches in play."""
    return 0.5 * math.asin((n * n + n) / (3.0 * n * n + 3.0 * n + 1.0))


def has_upper_branch(p: SymmetricParams) -> bool:
    """Whether the CP trajectory traces both branches (non-interacting case).

    The upper end is inclusive: at alpha = pi/4 the single-branch interval
    degenerates to a point and both branches span the full purity range.
    """
    return two_branch_threshold(p.n) < p.alpha <= math.pi / 4.0 + _EDGE_SLACK


def branch_values(p: SymmetricParams, purities):
    """f-(P) and f+(P): the two parabola preimages of a purity value."""
    con = constants(p)
    pur = np.asarray(purities, dtype=float)
    lo = 1.0 - 1.0 / con.gamma
    if np.any(pur < lo - _EDGE_SLACK) or np.any(pur > 1.0 + _EDGE_SLACK):
        raise DomainError(f"purity outside [{lo}, 1]")
    root = np.sqrt(np.clip(1.0 + con.gamma * (pur - 1.0), 0.0, None))
    return (1.0 - root) / con.gamma, (1.0 + root) / con.gamma


def curve_value(p: SymmetricParams, purities, branch: str):
    """Concurrence branch C-(P) or C+(P) for the non-interacting case."""
    if branch not in ("minus", "plus"):
        raise ValueError(f"branch must be 'minus' or 'plus', got {branch!r}")
    con = constants(p)
    s2a = math.sin(2.0 * p.alpha)
    f_minus, f_plus = branch_values(p, purities)
    f = f_minus if branch == "minus" else f_plus
    return np.maximum(0.0, np.abs(s2a - f) - con.beta * f)


def _sample_curve(name: str, lo: float, hi: float, fn, samples: int) -> CPCurve:
    pur = np.linspace(lo, hi, samples)
    return CPCurve(name, pur, np.asarray(fn(pur), dtype=float), lo, hi)


def cp_curves(p: SymmetricParams, samples: int = 512) -> CPCurveSet:
    """Concurrence branches plus reference curves (non-interacting case only)."""
    if p.kappa != 0.0 or p.ising != 0.0:
        raise ValueError("the CP-plane inversion holds only for kappa = ising = 0")
    con = constants(p)
    s2a = math.sin(2.0 * p.alpha)
    vertex_lo = 1.0 - 1.0 / con.gamma
    turn = con.gamma * (1.0 + s2a) ** 2 / 4.0 - s2a
    if has_upper_branch(p):
        c_minus = _sample_curve("c_minus", vertex_lo, 1.0, lambda x: curve_value(p, x, "minus"), samples)
        c_plus = _sample_curve("c_plus", vertex_lo, turn, lambda x: curve_value(p, x, "plus"), samples)
    else:
        c_minus = _sample_curve("c_minus", turn, 1.0, lambda x: curve_value(p, x, "minus"), samples)
        c_plus = None
    mems = _sample_curve("mems", 0.25, 1.0, mems_frontier, samples)
    xi = np.linspace(1.0, 0.0, samples)
    wp, wc = werner_line(xi)
    werner = CPCurve("werner", wp, wc, 0.25, 1.0)
    limit = _sample_curve("limit", 1.0 / 3.0, 1.0, lambda x: limit_curve_inf(x)[0], samples)
    return CPCurveSet(c_minus, c_plus, mems, werner, limit)


def p_min(p: SymmetricParams) -> float:
    """Minimum purity along the trajectory.

    When the swing of F carries the state past the purity-parabola vertex
    (which requires both the angle window and a small enough coupling
    difference), the minimum is the vertex value 1 - 1/gamma; otherwise it is
    the purity at the quarter period t = pi / (2 omega).
    """
    con = constants(p)
    n = p.n
    s2a = math.sin(2.0 * p.alpha)
    window = two_branch_threshold(n) < p.alpha <= math.pi / 4.0 + _EDGE_SLACK
    rhs = (2.0 * n * (n + 1.0) * (3.0 * s2a - 1.0) + 2.0 * s2a) / (2.0 * n + 1.0)
    if window and (p.kappa - p.ising) ** 2 < rhs:
        return 1.0 - 1.0 / con.gamma
    f_max = (2.0 * n + 1.0) * (1.0 + s2a) / con.omega**2
    return 1.0 - 2.0 * f_max + con.gamma * f_max * f_max


def mems_frontier(purities):
    """Largest concurrence reachable at a given purity (frontier of the
    forbidden region).  Scalar in, scalar out; arrays pass through."""
    pur = np.asarray(purities, dtype=float)
    if np.any(pur < 0.25 - _EDGE_SLACK) or np.any(pur > 1.0 + _EDGE_SLACK):
        raise DomainError("purity outside [1/4, 1]")
    upper = 0.5 * (1.0 + np.sqrt(np.clip(2.0 * pur - 1.0, 0.0, None)))
    middle = np.sqrt(np.clip(2.0 * (pur - 1.0 / 3.0), 0.0, None))
    c = np.where(pur >= 5.0 / 9.0, upper, np.where(pur >= 1.0 / 3.0, middle, 0.0))
    return float(c) if np.isscalar(purities) or np.ndim(purities) == 0 else c


def werner_line(xi):
    """CP location of the Werner family xi * I/4 + (1 - xi) |Bell><Bell|."""
    x = np.asarray(xi, dtype=float)
    if np.any(x < -_EDGE_SLACK) or np.any(x > 1.0 + _EDGE_SLACK):
        raise DomainError("xi outside [0, 1]")
    pur = 3.0 * x * x / 16.0 + (1.0 - 0.75 * x) ** 2
    c = np.maximum(0.0, 1.0 - 1.5 * x)
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return CPPoint(float(pur), float(c))
    return pur, c


def limit_curve_inf(purities):
    """Large-n limit of the Bell-state branches: (C_minus, C_plus).

    C_plus exists only on [1/3, 1/2] (where it is identically zero); it is
    None elsewhere.  For array input the second element is a mask-less array
    valid on that subinterval only.
    """
    pur = np.asarray(purities, dtype=float)
    if np.any(pur < 1.0 / 3.0 - _EDGE_SLACK) or np.any(pur > 1.0 + _EDGE_SLACK):
        raise DomainError("purity outside [1/3, 1]")
    c_minus = np.maximum(0.0, (np.sqrt(np.clip(24.0 * pur - 8.0, 0.0, None)) - 1.0) / 3.0)
    if np.isscalar(purities) or np.ndim(purities) == 0:
        c_plus = 0.0 if pur <= 0.5 + _EDGE_SLACK else None
        return float(c_minus), c_plus
    return c_minus, np.zeros_like(pur)
