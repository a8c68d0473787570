"""Transistor modes and their coupling to the oscillating gate condensate."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import constants
from scipy.optimize import minimize_scalar
from scipy.special import gammaln, logsumexp, xlogy

from .oscillator import DIMENSIONLESS, OscillatorConfig, eigenfunctions, gauss_hermite_rule

__all__ = [
    "TransistorSpec",
    "InteractionInput",
    "CouplingTable",
    "CouplingPeak",
    "TransistorEnergy",
    "eta_coupling",
    "overlap_un",
    "overlap_Un",
    "overlap_table",
    "coupling_factor",
    "chi",
    "coupling_peak",
    "interaction_energy",
    "transmission_rate",
    "small_kappa_rate",
    "normal_mode_overlap",
    "normal_mode_overlap_explicit",
    "transistor_energy",
]


@dataclass(frozen=True)
class TransistorSpec:
    """Transistor modes |SG> = |N+1>, |SD> = |N+2> with shared mixing angle.

    ``kappa`` is the amplitude transmission angle (sin(kappa) into the
    drain), ``gamma`` the trial rate.
    """

    theta: float = math.pi / 4
    kappa: float = 0.1
    gamma: float = 1.0
    cfg: OscillatorConfig = field(default=DIMENSIONLESS)

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if math.sin(self.kappa) ** 2 > 0.2:
            warnings.warn(
                f"sin^2(kappa) = {math.sin(self.kappa) ** 2:.3g} > 0.2; small-transmission results are unreliable",
                stacklevel=2,
            )


@dataclass(frozen=True)
class InteractionInput:
    alpha: complex
    phi: float
    Mg: float
    Mplus: float
    Mminus: float

    def __post_init__(self):
        if self.Mplus < 0 or self.Mminus < 0 or self.Mg < 0:
            raise ValueError("occupations must be >= 0")


def eta_coupling(a_s: float, mass: float, area: float, hbar: float = constants.hbar) -> float:
    """Contact coupling strength eta = (4 pi / A) hbar^2 a_s / m.

    Defaults to SI; pass ``hbar=1`` with oscillator-unit inputs for the
    dimensionless value.
    """
    if not (a_s > 0 and mass > 0 and area > 0):
        raise ValueError("a_s, mass and area must be positive")
    return 4.0 * math.pi / area * hbar ** 2 * a_s / mass


def overlap_table(spec: TransistorSpec, method: str = "gauss-hermite", step: float = 0.005) -> np.ndarray:
    """U_n for n = 1..N with psi_SD, psi_SG reduced to their gate content.

    U_n = cos^2(theta) * integral psi_{n-1} psi_n psi_{N+2} psi_{N+1} dx,
    in oscillator units (inverse oscillator lengths).  ``method`` is
    ``"gauss-hermite"`` (max(64, 2N+16) nodes; exact for these integrands)
    or ``"trapezoid"`` on [-2 sqrt(2N+1), 2 sqrt(2N+1)] as an independent
    check.
    """
    N = spec.cfg.N
    if method == "gauss-hermite":
        x, w = gauss_hermite_rule(4, max(64, 2 * N + 16))
    elif method == "trapezoid":
        half = 2.0 * math.sqrt(2 * N + 1)
        x = np.linspace(-half, half, int(math.ceil(2 * half / step)) + 1)
        w = np.full(x.size, x[1] - x[0])
        w[[0, -1]] *= 0.5
    else:
        raise ValueError(f"unknown quadrature method {method!r}")
    psi = eigenfunctions(N + 2, x)
    transistor = w * psi[N + 2] * psi[N + 1]
    U = (psi[:N] * psi[1 : N + 1]) @ transistor
    # sin(pi/2 - theta) is exactly 0 at theta = pi/2, cos(theta) is not
    return math.sin(math.pi / 2 - spec.theta) ** 2 * U


def overlap_un(n: int, spec: TransistorSpec, method: str = "gauss-hermite") -> float:
    if not 1 <= n <= spec.cfg.N:
        raise ValueError(f"n must lie in [1, {spec.cfg.N}], got {n}")
    return float(overlap_table(spec, method)[n - 1])


overlap_Un = overlap_un


@dataclass(frozen=True)
class CouplingTable:
    """Precomputed overlaps U_1..U_N and the coupling evaluator's constants.

    ``normalized`` selects whether chi carries the truncation factor
    C_N(alpha).  The default (False) takes C_N = 1, which is the form whose
    |alpha| chi(alpha) peaks just below sqrt(N) and then dies away; with
    C_N included the tail decays only as 1/|alpha| and the peak moves
    above sqrt(N).
    """

    U: np.ndarray
    chi0: float
    spec: TransistorSpec
    eta: float = 1.0
    normalized: bool = False

    @classmethod
    def build(cls, spec: TransistorSpec, eta: float = 1.0, normalized: bool = False) -> "CouplingTable":
        U = overlap_table(spec)
        U.setflags(write=False)
        return cls(U=U, chi0=float(4.0 * eta * abs(U[0])), spec=spec, eta=eta, normalized=normalized)

    @property
    def N(self) -> int:
        return self.spec.cfg.N


def coupling_factor(alpha, table: CouplingTable):
    """Coupling factor chi(alpha); depends on |alpha| only.

    4 eta C_N e^{-|a|^2} sum_n |a|^{2(n-1)} / sqrt(n!(n-1)!) |U_n|, summed in
    the log domain.  Accepts a scalar or an array of amplitudes.
    """
    r = np.abs(np.asarray(alpha))
    x = (r * r).reshape(-1)
    absU = np.abs(table.U)
    if not np.any(absU):
        out = np.zeros_like(x)
        return out.reshape(r.shape) if r.ndim else float(out[0])
    n = np.arange(1, table.N + 1)[:, None]
    with np.errstate(divide="ignore"):
        log_terms = xlogy(n - 1, x) - 0.5 * (gammaln(n + 1) + gammaln(n)) + np.log(absU)[:, None]
    log_num = logsumexp(log_terms, axis=0)
    if table.normalized:
        m = np.arange(table.N + 1)[:, None]
        log_den = logsumexp(xlogy(m, x) - gammaln(m + 1), axis=0)
    else:
        log_den = x
    out = 4.0 * table.eta * np.exp(log_num - log_den)
    return out.reshape(r.shape) if r.ndim else float(out[0])


class CouplingPeak(NamedTuple):
    alpha: float
    value: float
    ratio: float  # value / (chi0 sqrt(N))


chi = coupling_factor


def coupling_peak(table: CouplingTable, grid_points: int = 41) -> CouplingPeak:
    """Maximizer of |alpha| chi(alpha) on [0, 2 sqrt(N)].

    A coarse grid locates the bracketing cell, then golden-section search
    refines it.
    """
    upper = 2.0 * math.sqrt(table.N)
    grid = np.linspace(0.0, upper, grid_points)
    values = grid * coupling_factor(grid, table)
    i = int(np.argmax(values))
    if values[i] <= 0.0:
        return CouplingPeak(0.0, 0.0, 0.0)
    if 0 < i < grid_points - 1:
        res = minimize_scalar(
            lambda a: -a * coupling_factor(a, table),
            bracket=(grid[i - 1], grid[i], grid[i + 1]),
            method="golden",
            options={"xtol": 1e-10},
        )
        a_peak, value = float(res.x), float(-res.fun)
    else:
        a_peak, value = float(grid[i]), float(values[i])
    return CouplingPeak(a_peak, value, value / (table.chi0 * math.sqrt(table.N)))


def interaction_energy(inp: InteractionInput, table: CouplingTable) -> complex:
    """Gate-transistor interaction energy <E_GT>.

    The real part is the phase-dependent potential used downstream; the
    imaginary part is the kappa^2 cross term.
    """
    Mp, Mm = inp.Mplus, inp.Mminus
    scale = coupling_factor(inp.alpha, table) * abs(inp.alpha) * inp.Mg
    kappa = table.spec.kappa
    real = math.cos(inp.phi) * (Mp - Mm)
    imag = -0.5 * kappa ** 2 * math.sin(inp.phi) * (math.sqrt(Mp * (Mm + 1)) - math.sqrt(Mm * (Mp + 1)))
    return complex(scale * real, scale * imag)


def transmission_rate(spec: TransistorSpec) -> float:
    """Gamma_T = gamma sin^2(kappa)."""
    return spec.gamma * math.sin(spec.kappa) ** 2


def small_kappa_rate(spec: TransistorSpec) -> float:
    return spec.gamma * spec.kappa ** 2


def normal_mode_overlap(spec: TransistorSpec) -> float:
    """<-|+> = -kappa^2 / 2 over the space excluding the drain."""
    return -0.5 * spec.kappa ** 2


def normal_mode_overlap_explicit(spec: TransistorSpec) -> float:
    """<-|+> from explicit vectors on the basis (S1, S2, N+1, N+2, D).

    The drain component is projected out before taking the inner product.
    Agrees with :func:`normal_mode_overlap` up to O(kappa^4).
    """
    s, c = math.sin(spec.theta), math.cos(spec.theta)
    sk, ck = math.sin(spec.kappa), math.cos(spec.kappa)
    sg = np.array([s, 0.0, c, 0.0, 0.0])
    sd = np.array([0.0, ck * s, 0.0, ck * c, sk])
    plus = (sd + sg) / math.sqrt(2.0)
    minus = (sd - sg) / math.sqrt(2.0)
    keep = np.diag([1.0, 1.0, 1.0, 1.0, 0.0])
    return float(minus @ keep @ plus)


class TransistorEnergy(NamedTuple):
    total: float
    spontaneous: float  # the (negative) normal-mode cross term, included in total


def transistor_energy(Mplus: float, Mminus: float, spec: TransistorSpec) -> TransistorEnergy:
    if Mplus < 0 or Mminus < 0:
        raise ValueError("occupations must be >= 0")
    hw = spec.cfg.energy_quantum
    diagonal = (spec.cfg.N + 2) * (Mplus + Mminus) * hw
    cross = math.sqrt(Mminus * (Mplus + 1)) + math.sqrt(Mplus * (Mminus + 1))
    spontaneous = -0.5 * spec.kappa ** 2 * cross * 0.5 * hw
    return TransistorEnergy(diagonal + spontaneous, spontaneous)
