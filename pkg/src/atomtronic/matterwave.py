"""Classical matterwave emitted into the drain, and a mass-spring detector."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

__all__ = [
    "DrainWaveSpec",
    "MatterwaveParams",
    "drain_frequency",
    "wave_params",
    "wave_field",
    "standing_wave",
    "detector_response",
    "detector_linewidth",
]


@dataclass(frozen=True)
class DrainWaveSpec:
    omega0: float
    omega_d: float
    mass: float
    I_d: float
    hbar: float = 1.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")
        if not self.mass > 0 or not self.hbar > 0:
            raise ValueError("mass and hbar must be positive")
        if self.I_d < 0:
            raise ValueError("I_d must be >= 0")
        if self.omega_d < self.omega0:
            raise ValueError(
                f"omega_d = {self.omega_d:.6g} < omega0 = {self.omega0:.6g}: index would exceed 1"
            )


def drain_frequency(N: int, omega0: float = 1.0, drop: float = 0.0, hbar: float = 1.0) -> float:
    """omega_d for a particle leaving the |SD> level, (N + 5/2) omega0 + drop / hbar.

    ``drop`` is the energy from the transistor level reference down to the
    drain floor, normally the source bias V_SS.
    """
    return (N + 2.5) * omega0 + drop / hbar


@dataclass(frozen=True)
class MatterwaveParams:
    """Wave quantities; the wave fields oscillate at omega0.

    ``lambda_d`` is n * lambda_m.  ``lambda_dB`` is the de Broglie
    wavelength h / sqrt(2 m hbar omega_d) of a drain particle, which equals
    (n^2 / 2) lambda_m.  ``p_matteron`` = sqrt(2 m hbar omega0) = hbar k0
    with k0 = 2 k_m / n.
    """

    n: float
    Z: float
    Z0: float
    k_m: float
    v_m: float
    F0: float
    I0: float
    lambda_m: float
    lambda_d: float
    lambda_dB: float
    P_d: float
    P_Tot: float
    p_matteron: float
    k0: float
    omega0: float
    omega_d: float


def _isclose(a, b):
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-300)


def wave_params(spec: DrainWaveSpec) -> MatterwaveParams:
    w0, m, hbar = spec.omega0, spec.mass, spec.hbar
    n = math.sqrt(w0 / spec.omega_d)
    Z0 = w0 / (2.0 * m)
    Z = n * n * Z0
    k_m = n * math.sqrt(m * w0 / (2.0 * hbar))
    v_m = math.sqrt(2.0 * hbar * w0 / m) / n
    I0 = 2.0 / n * math.sqrt(m * hbar * spec.I_d)
    F0 = Z * I0
    P_d = spec.I_d * hbar * w0
    if not _isclose(0.5 * F0 * I0, P_d):
        raise ArithmeticError("wave power does not match oscillator power")
    lambda_m = 2.0 * math.pi / k_m
    p = math.sqrt(2.0 * m * hbar * w0)
    return MatterwaveParams(
        n=n,
        Z=Z,
        Z0=Z0,
        k_m=k_m,
        v_m=v_m,
        F0=F0,
        I0=I0,
        lambda_m=lambda_m,
        lambda_d=n * lambda_m,
        lambda_dB=2.0 * math.pi * hbar / math.sqrt(2.0 * m * hbar * spec.omega_d),
        P_d=P_d,
        P_Tot=spec.I_d * hbar * spec.omega_d,
        p_matteron=p,
        k0=p / hbar,
        omega0=w0,
        omega_d=spec.omega_d,
    )


def wave_field(params: MatterwaveParams, z, t):
    """Travelling potential-like and current-like fields (F, I) at (z, t)."""
    phase = params.k_m * np.asarray(z, dtype=float) - params.omega0 * np.asarray(t, dtype=float)
    c = np.cos(phase)
    return params.F0 * c, params.I0 * c


def standing_wave(params: MatterwaveParams, z, barrier_at: float):
    """Time-averaged |I|^2 in front of a hard reflecting barrier.

    Incident and pi-shifted reflected current waves give
    I = 2 I0 sin(k_m (b - z)) sin(k_m b - omega0 t), averaging to
    2 I0^2 sin^2(k_m (b - z)).
    """
    z = np.asarray(z, dtype=float)
    if np.any(z > barrier_at):
        raise ValueError("z must not lie beyond the barrier")
    out = 2.0 * params.I0 ** 2 * np.sin(params.k_m * (barrier_at - z)) ** 2
    return out if out.ndim else float(out)


def detector_linewidth(damping: float, duration: float) -> float:
    """Angular-frequency width of the detector resonance: damping plus 1/duration."""
    return damping + 1.0 / duration


def detector_response(
    params: MatterwaveParams,
    k_s: float,
    m_s: float,
    damping: float,
    duration: float,
    coupling: float = 1.0,
) -> float:
    """Energy absorbed by a mass-spring mirror exposed to the wave.

    The mirror (mass ``m_s``, spring ``k_s``, amplitude damping rate
    ``damping``) starts at rest and is driven by
    F(t) = coupling * I0 * v_m * k_m * cos(omega0 t); k_m v_m = omega0 makes
    this a force.  Returns the work done by the drive over ``duration``,
    evaluated with Van Loan's block matrix exponential.
    """
    if not (k_s > 0 and m_s > 0):
        raise ValueError("k_s and m_s must be positive")
    if damping < 0 or not duration > 0:
        raise ValueError("damping must be >= 0 and duration positive")
    w0 = params.omega0
    force = coupling * params.I0 * params.v_m * params.k_m
    if force == 0.0:
        return 0.0
    f = force / m_s
    # state (x, v, cos w0 t, sin w0 t)
    A = np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [-k_s / m_s, -damping, f, 0.0],
            [0.0, 0.0, 0.0, -w0],
            [0.0, 0.0, w0, 0.0],
        ]
    )
    # power F(t) v = m_s f cos(w0 t) v as a quadratic form
    Qf = np.zeros((4, 4))
    Qf[1, 2] = Qf[2, 1] = 0.5 * m_s * f
    # Van Loan on a short step (the block exponential is only well conditioned
    # while h is small against the drive period and 1/damping), then interval
    # doubling: G(2h) = G(h) + Phi(h)^T G(h) Phi(h).
    rate = max(w0, math.sqrt(k_s / m_s), damping)
    doublings = max(0, math.ceil(math.log2(duration * rate)))
    h = duration / 2 ** doublings
    block = np.zeros((8, 8))
    block[:4, :4] = -A.T
    block[:4, 4:] = Qf
    block[4:, 4:] = A
    E = expm(block * h)
    phi = E[4:, 4:]
    gramian = phi.T @ E[:4, 4:]
    for _ in range(doublings):
        gramian = gramian + phi.T @ gramian @ phi
        phi = phi @ phi
    y0 = np.array([0.0, 0.0, 1.0, 0.0])
    return float(y0 @ gramian @ y0)
