"""Self-consistent model of a triple-well atomtronic transistor oscillator.

Modules: ``oscillator`` (basis functions, truncated coherent states),
``coupling`` (gate-transistor overlaps and coupling factor), ``circuit``
(DC equivalent-circuit steady state), ``matterwave`` (emitted wave and a
mass-spring detector), ``config``/``cli`` (TOML runs and tables).
"""
__version__ = "0.1.0"

from .circuit import BatterySpec, CircuitState, GateCircuitSpec, solve_steady_state
from .coupling import CouplingTable, TransistorSpec, coupling_factor, coupling_peak
from .matterwave import DrainWaveSpec, wave_params
from .oscillator import OscillatorConfig, truncated_coherent_state

__all__ = [
    "__version__",
    "BatterySpec",
    "CircuitState",
    "GateCircuitSpec",
    "solve_steady_state",
    "CouplingTable",
    "TransistorSpec",
    "coupling_factor",
    "coupling_peak",
    "DrainWaveSpec",
    "wave_params",
    "OscillatorConfig",
    "truncated_coherent_state",
]
