"""Single-particle harmonic-oscillator basis and truncated coherent states.

All work is done in oscillator units (hbar = m = omega0 = 1, lengths in
sqrt(hbar / m omega0)).  ``OscillatorConfig`` carries the physical scales
and converts at the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants
from scipy.special import gammaln, roots_hermite

__all__ = [
    "OscillatorConfig",
    "FockVector",
    "MassiveState",
    "hermite",
    "eigenfunction",
    "eigenfunctions",
    "gauss_hermite_rule",
    "product_integral",
    "product_integral_trapezoid",
    "normalization_cn",
    "normalization_CN",
    "log_normalization_cn",
    "truncated_coherent_state",
    "coherent_state",
    "position_density",
    "position_moments",
    "density_fwhm",
    "massive_state_energy",
    "TURNAROUND_TIME",
    "CENTER_TIME",
]

# Phase convention for real positive alpha: maximal displacement at t = 0.
TURNAROUND_TIME = 0.0
CENTER_TIME = math.pi / 2


@dataclass(frozen=True)
class OscillatorConfig:
    """Gate-well description.

    ``N`` is the number of fully trapped gate levels above the ground state,
    so the gate basis is {0, ..., N}.  The defaults are the dimensionless
    unit system; use :meth:`si` for a physical well.
    """

    omega0: float = 1.0
    mass: float = 1.0
    N: int = 36
    hbar: float = 1.0
    kB: float = 1.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be an integer >= 1, got {self.N}")
        if not (self.hbar > 0 and self.kB > 0):
            raise ValueError("hbar and kB must be positive")
        object.__setattr__(self, "N", int(self.N))

    @classmethod
    def si(cls, omega0: float, mass: float, N: int) -> "OscillatorConfig":
        return cls(omega0=omega0, mass=mass, N=N, hbar=constants.hbar, kB=constants.k)

    @property
    def energy_quantum(self) -> float:
        """hbar * omega0."""
        return self.hbar * self.omega0

    @property
    def length_scale(self) -> float:
        return math.sqrt(self.hbar / (self.mass * self.omega0))

    @property
    def time_scale(self) -> float:
        return 1.0 / self.omega0

    def to_oscillator_length(self, x):
        return np.asarray(x, dtype=float) / self.length_scale

    def from_oscillator_length(self, xi):
        return np.asarray(xi, dtype=float) * self.length_scale


DIMENSIONLESS = OscillatorConfig()


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def eigenfunctions(nmax: int, x) -> np.ndarray:
    """Dimensionless eigenfunctions psi_0..psi_nmax evaluated at ``x``.

    The Gaussian weight is carried inside the recurrence,
    psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1},
    so no factorial or bare H_n is ever formed.  Returns shape
    ``(nmax + 1,) + x.shape``.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, nmax):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def eigenfunction(n: int, x, cfg: OscillatorConfig | None = None):
    """Hermite-Gaussian psi_n(x).

    ``x`` is in the length units of ``cfg``; with ``cfg=None`` (or the
    dimensionless config) it is already in oscillator units.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    cfg = cfg or DIMENSIONLESS
    xi = cfg.to_oscillator_length(x)
    psi = eigenfunctions(n, xi)[n] / math.sqrt(cfg.length_scale)
    return psi if psi.ndim else float(psi)


def gauss_hermite_rule(n_factors: int, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for integrating products of ``n_factors`` eigenfunctions.

    A product of p eigenfunctions carries exp(-p x^2 / 2); substituting
    y = x sqrt(p/2) turns it into a Gauss-Hermite integrand.  The returned
    weights already absorb exp(+y^2) (computed through the Christoffel
    function, which stays finite for large node counts), so that
    sum(w * prod(psi(x))) approximates the integral over x.
    """
    if n_factors < 1:
        raise ValueError("n_factors must be >= 1")
    y, _ = roots_hermite(nodes)
    christoffel = np.sum(eigenfunctions(nodes - 1, y) ** 2, axis=0)
    scale = math.sqrt(n_factors / 2.0)
    return y / scale, 1.0 / (christoffel * scale)


def product_integral(indices, nodes: int | None = None) -> float:
    """Integral of prod(psi_i(x)) over the real line by Gauss-Hermite.

    Exact whenever ``nodes`` exceeds half the total polynomial degree; the
    default node count guarantees that with margin.
    """
    indices = [int(i) for i in indices]
    if nodes is None:
        nodes = max(64, sum(indices) // 2 + 16)
    x, w = gauss_hermite_rule(len(indices), nodes)
    psi = eigenfunctions(max(indices), x)
    integrand = np.prod([psi[i] for i in indices], axis=0)
    return float(np.dot(w, integrand))


def product_integral_trapezoid(indices, half_width: float | None = None, step: float = 0.01) -> float:
    """Trapezoidal cross-check of :func:`product_integral` on [-L, L]."""
    indices = [int(i) for i in indices]
    if half_width is None:
        half_width = 2.0 * math.sqrt(2 * max(indices) + 1) + 4.0
    npts = int(math.ceil(2 * half_width / step)) + 1
    x = np.linspace(-half_width, half_width, npts)
    psi = eigenfunctions(max(indices), x)
    integrand = np.prod([psi[i] for i in indices], axis=0)
    return float(np.trapezoid(integrand, x))


def _log_poisson_weights(abs_alpha_sq: float, N: int) -> np.ndarray:
    n = np.arange(N + 1)
    if abs_alpha_sq == 0.0:
        out = np.full(N + 1, -np.inf)
        out[0] = 0.0
        return out
    return -abs_alpha_sq + n * math.log(abs_alpha_sq) - gammaln(n + 1)


def log_normalization_cn(alpha: complex, N: int) -> float:
    """log C_N(alpha), with C_N^-1 the Poisson mass on {0..N}."""
    if N < 0:
        raise ValueError("N must be >= 0")
    logw = _log_poisson_weights(abs(alpha) ** 2, N)
    top = float(np.max(logw))
    # smallest terms first
    tail = math.fsum(sorted(np.exp(logw - top).tolist()))
    # the mass of a Poisson law on a subset cannot exceed 1; clamp rounding
    return max(-(top + math.log(tail)), 0.0)


def normalization_cn(alpha: complex, N: int) -> float:
    """Truncated coherent-state normalization factor C_N(alpha) >= 1."""
    return float(np.exp(log_normalization_cn(alpha, N)))


normalization_CN = normalization_cn


@dataclass(frozen=True)
class FockVector:
    """Complex amplitudes on the gate basis {0..N}."""

    coefficients: np.ndarray
    config: OscillatorConfig = field(default=DIMENSIONLESS)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size != self.config.N + 1:
            raise ValueError(f"expected {self.config.N + 1} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def evolved(self, t: float) -> np.ndarray:
        n = np.arange(self.coefficients.size)
        return self.coefficients * np.exp(-1j * (n + 0.5) * self.config.omega0 * t)

    def overlap(self, other: "FockVector") -> complex:
        return complex(np.vdot(self.coefficients, other.coefficients))


@dataclass(frozen=True)
class MassiveState:
    """M_g particles sharing one displaced-ground-state orbital."""

    alpha: complex
    Mg: float

    def __post_init__(self):
        if self.Mg < 0:
            raise ValueError("Mg must be >= 0")


def _coherent_coefficients(alpha: complex, size: int, log_prefactor: float) -> np.ndarray:
    n = np.arange(size)
    r = abs(alpha)
    if r == 0.0:
        c = np.zeros(size, dtype=complex)
        c[0] = math.exp(log_prefactor)
        return c
    log_mag = log_prefactor + n * math.log(r) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * np.exp(1j * n * np.angle(alpha))


def truncated_coherent_state(alpha: complex, cfg: OscillatorConfig = DIMENSIONLESS) -> FockVector:
    """sqrt(C_N) exp(-|alpha|^2/2) sum_{n<=N} alpha^n / sqrt(n!) |n>."""
    log_pref = 0.5 * log_normalization_cn(alpha, cfg.N) - 0.5 * abs(alpha) ** 2
    return FockVector(_coherent_coefficients(alpha, cfg.N + 1, log_pref), cfg)


def coherent_state(alpha: complex, size: int) -> np.ndarray:
    """Untruncated coherent-state amplitudes on the first ``size`` Fock levels.

    No renormalization: the missing tail is the truncation error.
    """
    return _coherent_coefficients(alpha, size, -0.5 * abs(alpha) ** 2)


def position_density(state: FockVector, x, t: float = 0.0):
    """|sum_n c_n exp(-i(n+1/2) omega0 t) psi_n(x)|^2 in the config's length units."""
    cfg = state.config
    xi = cfg.to_oscillator_length(x)
    amp = np.tensordot(state.evolved(t), eigenfunctions(cfg.N, xi), axes=1)
    dens = np.abs(amp) ** 2 / cfg.length_scale
    return dens if dens.ndim else float(dens)


def position_moments(state: FockVector, t: float = 0.0) -> tuple[float, float]:
    """Mean and variance of position (oscillator units) from ladder-operator sums.

    x = (a + a^dagger)/sqrt(2) acts inside the truncated space, so these are
    exact expectation values for the finite state, with no quadrature.
    """
    c = state.evolved(t)
    n = np.arange(1, c.size)
    a_c = np.zeros_like(c)
    a_c[:-1] = np.sqrt(n) * c[1:]
    mean_a = np.vdot(c, a_c)
    # <a^2> and <a^dagger a>
    a2_c = np.zeros_like(c)
    a2_c[:-2] = np.sqrt(n[:-1] * n[1:]) * c[2:]
    mean_a2 = np.vdot(c, a2_c)
    mean_n = float(np.sum(np.arange(c.size) * np.abs(c) ** 2))
    mean_x = math.sqrt(2.0) * float(mean_a.real)
    mean_x2 = float(mean_a2.real) + mean_n + 0.5
    return mean_x, mean_x2 - mean_x ** 2


def density_fwhm(state: FockVector, t: float = 0.0, points: int = 20001) -> float:
    """Full width at half maximum of the main density peak (oscillator units)."""
    N = state.config.N
    half = 2.0 * math.sqrt(2 * N + 1) + 4.0
    x = np.linspace(-half, half, points)
    dens = np.abs(np.tensordot(state.evolved(t), eigenfunctions(N, x), axes=1)) ** 2
    i = int(np.argmax(dens))
    level = 0.5 * dens[i]
    lo = i
    while lo > 0 and dens[lo - 1] >= level:
        lo -= 1
    hi = i
    while hi < points - 1 and dens[hi + 1] >= level:
        hi += 1

    def crossing(j_in, j_out):
        # linear interpolation between the last point above and first below
        y0, y1 = dens[j_in], dens[j_out]
        return x[j_in] + (level - y0) * (x[j_out] - x[j_in]) / (y1 - y0)

    left = crossing(lo, lo - 1) if lo > 0 else x[0]
    right = crossing(hi, hi + 1) if hi < points - 1 else x[-1]
    return float(right - left)


def massive_state_energy(state: MassiveState, cfg: OscillatorConfig = DIMENSIONLESS) -> float:
    return state.Mg * (abs(state.alpha) ** 2 + 0.5) * cfg.energy_quantum
