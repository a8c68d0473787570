"""Classical DC equivalent circuit of the transistor oscillator.

Units follow the particle-current analogy: potentials are energies,
currents are particles per time, capacitances are particles per energy and
resistances are energy * time per particle.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace
from typing import NamedTuple

from .coupling import CouplingTable, TransistorSpec, transmission_rate
from .oscillator import OscillatorConfig

__all__ = [
    "BatterySpec",
    "GateCircuitSpec",
    "CircuitState",
    "CircuitError",
    "UnstableBiasError",
    "ConvergenceError",
    "OutOfBandError",
    "lower_entry_probability",
    "rho",
    "bias_current",
    "coupling_potential",
    "phase_potential",
    "matched_phase",
    "transconductance",
    "current_gain",
    "fixed_point_drain_current",
    "solve_steady_state",
    "q_limited_amplitude",
]


_EPS = sys.float_info.epsilon


class CircuitError(RuntimeError):
    """The circuit has no reportable steady state."""


class UnstableBiasError(CircuitError):
    pass


class ConvergenceError(CircuitError):
    pass


class OutOfBandError(ValueError):
    """Energy offset outside +-V0: the particle cannot join the drain current."""


@dataclass(frozen=True)
class BatterySpec:
    """Source reservoir.  ``T_B`` is given in temperature units of the config
    (k_B T_B is the thermal energy); ``R_I`` may be negative."""

    mu_B: float
    T_B: float
    V_SS: float = 0.0
    R_I: float = 0.0
    C_S: float = 1.0

    def __post_init__(self):
        if not self.mu_B > 0:
            raise ValueError(f"mu_B must be positive, got {self.mu_B}")
        if not self.T_B > 0:
            raise ValueError(f"T_B must be positive, got {self.T_B}")
        if not self.C_S > 0:
            raise ValueError(f"C_S must be positive, got {self.C_S}")


@dataclass(frozen=True)
class GateCircuitSpec:
    C_G: float
    chi0: float
    spec: TransistorSpec
    Q: float | None = None
    mode_sign: int = -1  # -1: antisymmetric mode carries the current

    def __post_init__(self):
        if not self.C_G > 0:
            raise ValueError(f"C_G must be positive, got {self.C_G}")
        if self.Q is not None and not self.Q > 0:
            raise ValueError(f"Q must be positive, got {self.Q}")
        if self.mode_sign not in (-1, 1):
            raise ValueError("mode_sign must be +1 or -1")

    @classmethod
    def from_table(cls, table: CouplingTable, C_G: float, Q: float | None = None, mode_sign: int = -1):
        return cls(C_G=C_G, chi0=table.chi0, spec=table.spec, Q=Q, mode_sign=mode_sign)

    @property
    def Gamma_osc(self) -> float:
        if self.Q is None or math.isinf(self.Q):
            return 0.0
        return self.spec.cfg.omega0 / self.Q


@dataclass(frozen=True)
class CircuitState:
    rho: float
    I_0: float
    chi0: float
    g_m: float
    V0: float
    beta: float
    I_dss: float
    I_dss_fixed_point: float
    iterations: int
    mu_s: float
    mu_g: float
    r_gs: float
    P_b: float
    P_g: float
    P_osc: float
    alpha_sq: float
    saturated: bool
    mode_sign: int


def _boltzmann_exponent(battery: BatterySpec, cfg: OscillatorConfig) -> float:
    if not battery.T_B > 0:
        raise ValueError("T_B must be positive")
    return cfg.energy_quantum / (cfg.kB * battery.T_B)


def lower_entry_probability(battery: BatterySpec, cfg: OscillatorConfig) -> float:
    """Probability that a battery particle enters via the lower transistor state."""
    return -math.expm1(-_boltzmann_exponent(battery, cfg))


rho = lower_entry_probability


def bias_current(battery: BatterySpec, GammaT: float, cfg: OscillatorConfig) -> float:
    """Uncoupled drain current I_0 = mu_B C_S Gamma_T exp(-hbar omega0 / k_B T_B).

    Assumes I_0 is small enough that the drop across R_I is negligible.
    """
    if GammaT < 0:
        raise ValueError("GammaT must be >= 0")
    return battery.mu_B * battery.C_S * GammaT * math.exp(-_boltzmann_exponent(battery, cfg))


def coupling_potential(chi0: float, N: int, C_G: float, mu_g: float) -> float:
    """V0 = chi0 sqrt(N) C_G mu_g, the peak coupling energy per particle."""
    if mu_g < 0:
        raise ValueError("mu_g must be >= 0")
    return chi0 * math.sqrt(N) * C_G * mu_g


def phase_potential(V0: float):
    """Return V(phi) = -V0 cos(phi)."""
    return lambda phi: -V0 * math.cos(phi)


def matched_phase(deltaE: float, V0: float) -> float:
    if abs(deltaE) > V0:
        raise OutOfBandError(f"|deltaE| = {abs(deltaE):.6g} exceeds V0 = {V0:.6g}")
    return math.acos(deltaE / V0)


def transconductance(chi0: float, N: int, C_G: float, C_S: float, mu_B: float, hbar: float = 1.0) -> float:
    return chi0 * math.sqrt(N) * C_G * C_S * mu_B / hbar


def current_gain(V0: float, GammaT: float, rho: float, hbar: float = 1.0) -> float:
    """beta = V0 / ((1 - rho) hbar Gamma_T)."""
    if not GammaT > 0:
        raise ValueError("GammaT must be positive")
    if not rho < 1:
        raise ValueError("rho must be < 1")
    return V0 / ((1.0 - rho) * hbar * GammaT)


def fixed_point_drain_current(
    battery: BatterySpec,
    gate: GateCircuitSpec,
    cfg: OscillatorConfig,
    damping: float = 0.5,
    rtol: float = 1e-14,
    max_iter: int = 10_000,
) -> tuple[float, int]:
    """Iterate mu_g -> V0 -> I_d -> mu_s -> mu_g to self-consistency.

    Each pass rebuilds V0 from the current gate potential.  Updates are
    damped, and the damping adapts to the ratio q of successive residuals:
    a step that overshoots (q < -1/2) is retried at half the damping, a
    sluggish one (q > 1/2) doubles it up to 1.  This keeps the loop
    contracting for large g_m R_I and quick for weak feedback.
    """
    hw = cfg.energy_quantum
    rho_hw = lower_entry_probability(battery, cfg) * hw
    gain = battery.mu_B * battery.C_S / cfg.hbar

    def drain_current(current):
        mu_s = battery.mu_B - current * battery.R_I
        mu_g = max(mu_s + rho_hw, 0.0)
        return gain * coupling_potential(gate.chi0, cfg.N, gate.C_G, mu_g)

    current = 0.0
    residual = drain_current(current) - current
    for it in range(1, max_iter + 1):
        scale = max(abs(current), abs(current + residual), 1e-300)
        # rounding floor of one map evaluation (mu_B - I R_I cancels when the
        # loop gain is large)
        floor = 4.0 * _EPS * gain * coupling_potential(
            gate.chi0, cfg.N, gate.C_G, abs(battery.mu_B) + abs(current * battery.R_I) + rho_hw
        )
        if abs(residual) <= max(rtol * scale, floor):
            return current, it
        trial = current + damping * residual
        trial_residual = drain_current(trial) - trial
        q = trial_residual / residual
        if q < -0.5 and damping > 1e-12:
            damping *= 0.5
            continue
        if q > 0.5:
            damping = min(1.0, 2.0 * damping)
        current, residual = trial, trial_residual
    raise ConvergenceError(
        f"fixed point not reached in {max_iter} iterations "
        f"(I = {current:.17g}, residual = {residual:.3g}, damping = {damping:.3g})"
    )


def solve_steady_state(battery: BatterySpec, gate: GateCircuitSpec, cfg: OscillatorConfig) -> CircuitState:
    """Closed-loop steady state: I_dss = g_m mu / (1 + g_m R_I), mu = mu_B + rho hbar omega0.

    The closed form is cross-checked against :func:`fixed_point_drain_current`.
    """
    hw = cfg.energy_quantum
    p = lower_entry_probability(battery, cfg)
    g_m = transconductance(gate.chi0, cfg.N, gate.C_G, battery.C_S, battery.mu_B, cfg.hbar)
    loop = 1.0 + g_m * battery.R_I
    if not loop > 0:
        raise UnstableBiasError(f"1 + g_m R_I = {loop:.6g} <= 0: no stable operating point")
    mu = battery.mu_B + p * hw
    I_dss = g_m * mu / loop

    I_fp, iterations = fixed_point_drain_current(battery, gate, cfg)
    if abs(I_fp - I_dss) > 1e-10 * max(abs(I_dss), 1e-300) and I_dss != 0.0:
        raise ConvergenceError(f"fixed point {I_fp!r} disagrees with closed form {I_dss!r}")

    mu_s = battery.mu_B - I_dss * battery.R_I
    mu_g = mu_s + p * hw
    V0 = coupling_potential(gate.chi0, cfg.N, gate.C_G, max(mu_g, 0.0))
    GammaT = transmission_rate(gate.spec)
    I_0 = bias_current(battery, GammaT, cfg)
    beta = current_gain(V0, GammaT, p, cfg.hbar) if GammaT > 0 and p < 1 else math.inf
    r_gs = -p * hw / I_dss if I_dss > 0 else -math.inf
    state = CircuitState(
        rho=p,
        I_0=I_0,
        chi0=gate.chi0,
        g_m=g_m,
        V0=V0,
        beta=beta,
        I_dss=I_dss,
        I_dss_fixed_point=I_fp,
        iterations=iterations,
        mu_s=mu_s,
        mu_g=mu_g,
        r_gs=r_gs,
        P_b=I_dss ** 2 * battery.R_I,
        P_g=-p * hw * I_dss,
        P_osc=0.0,
        alpha_sq=float(cfg.N),
        saturated=False,
        mode_sign=gate.mode_sign,
    )
    amp = q_limited_amplitude(state, gate, cfg)
    return replace(state, alpha_sq=amp.alpha_sq, P_osc=amp.P_osc, saturated=amp.saturated)


class Amplitude(NamedTuple):
    alpha_sq: float
    P_osc: float
    saturated: bool


def q_limited_amplitude(state: CircuitState, gate: GateCircuitSpec, cfg: OscillatorConfig) -> Amplitude:
    """Oscillation amplitude once the finite-Q heat load is balanced by gate cooling.

    Full amplitude |alpha|^2 = N while rho >= Gamma_osc mu_g C_G N; below that
    threshold |alpha|^2 = rho / (Gamma_osc mu_g C_G).
    """
    load = gate.Gamma_osc * state.mu_g * gate.C_G
    N = float(cfg.N)
    if load <= 0.0 or state.rho >= load * N:
        alpha_sq, saturated = N, False
    else:
        alpha_sq, saturated = min(state.rho / load, N), True
    P_osc = gate.Gamma_osc * state.mu_g * gate.C_G * alpha_sq * cfg.energy_quantum
    return Amplitude(alpha_sq, P_osc, saturated)
