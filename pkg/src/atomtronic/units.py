"""Unit-suffixed quantities for configuration files.

A quantity is either a bare number (already in oscillator units) or a
string ``"<number> <unit>"``.  Oscillator units are hbar = m = omega0 = 1;
SI suffixes are only accepted once the oscillator has a physical scale.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from scipy import constants

__all__ = ["Scales", "UnitError", "parse_quantity", "parse_oscillator_frequency", "parse_mass", "DIMENSIONS"]


class UnitError(ValueError):
    pass


@dataclass(frozen=True)
class Scales:
    """SI values of the oscillator units; ``None`` when running dimensionless."""

    omega0: float | None = None  # rad/s
    mass: float | None = None  # kg

    @property
    def physical(self) -> bool:
        return self.omega0 is not None and self.mass is not None

    def si_value(self, dimension: str) -> float:
        """SI size of one oscillator unit of ``dimension``."""
        if not self.physical:
            raise UnitError(f"SI units for {dimension} need a physical oscillator (omega0 and mass with units)")
        hbar = constants.hbar
        energy = hbar * self.omega0
        return {
            "energy": energy,
            "temperature": energy / constants.k,
            "length": math.sqrt(hbar / (self.mass * self.omega0)),
            "area": hbar / (self.mass * self.omega0),
            "time": 1.0 / self.omega0,
            "rate": self.omega0,
            "mass": self.mass,
            "capacitance": 1.0 / energy,
            "resistance": energy / self.omega0,
        }[dimension]


# oscillator-unit tokens per dimension, value in oscillator units
_OSC = {
    "energy": {"hw": 1.0, "hbar*omega0": 1.0},
    "temperature": {"hw": 1.0},
    "length": {"l0": 1.0},
    "area": {"l0^2": 1.0},
    "time": {"1/w0": 1.0, "t0": 1.0},
    "rate": {"w0": 1.0},
    "mass": {"m": 1.0},
    "capacitance": {"1/hw": 1.0},
    "resistance": {"hw/w0": 1.0},
    "angle": {"rad": 1.0, "deg": math.pi / 180.0, "pi": math.pi},
}

_SI = {
    "energy": {"J": 1.0, "eV": constants.eV},
    "temperature": {"K": 1.0, "mK": 1e-3, "uK": 1e-6, "nK": 1e-9},
    "length": {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9},
    "area": {"m^2": 1.0, "um^2": 1e-12},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6},
    "rate": {"1/s": 1.0, "Hz": 1.0, "kHz": 1e3},
    "mass": {"kg": 1.0, "amu": constants.atomic_mass, "u": constants.atomic_mass},
    "capacitance": {"1/J": 1.0},
    "resistance": {"J*s": 1.0},
}

# frequencies for the oscillator itself: Hz means cycles per second
_FREQUENCY_SI = {"rad/s": 1.0, "Hz": 2 * math.pi, "kHz": 2e3 * math.pi}

DIMENSIONS = tuple(_OSC)

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S*)\s*$")


def _split(value) -> tuple[float, str]:
    if isinstance(value, bool):
        raise UnitError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value), ""
    if not isinstance(value, str):
        raise UnitError(f"expected a number or '<number> <unit>' string, got {value!r}")
    m = _QUANTITY.match(value)
    if not m:
        raise UnitError(f"cannot parse quantity {value!r}")
    return float(m.group(1)), m.group(2)


def parse_quantity(value, dimension: str, scales: Scales = Scales()) -> float:
    """Convert a config value to oscillator units."""
    number, unit = _split(value)
    if not unit:
        return number
    osc = _OSC.get(dimension)
    if osc is None:
        raise UnitError(f"unknown dimension {dimension!r}")
    if unit in osc:
        return number * osc[unit]
    si = _SI.get(dimension, {})
    if unit in si:
        return number * si[unit] / scales.si_value(dimension)
    known = sorted(osc) + sorted(si)
    raise UnitError(f"unit {unit!r} is not valid for {dimension}; expected one of {known}")


def parse_oscillator_frequency(value) -> tuple[float, float | None]:
    """Return (omega0 in oscillator units = 1, SI omega0 or None)."""
    number, unit = _split(value)
    if not unit or unit == "w0":
        if number != 1.0:
            raise UnitError("a dimensionless omega0 must be 1 (it defines the unit system)")
        return 1.0, None
    if unit not in _FREQUENCY_SI:
        raise UnitError(f"unit {unit!r} is not valid for omega0; expected one of {sorted(_FREQUENCY_SI)}")
    return 1.0, number * _FREQUENCY_SI[unit]


def parse_mass(value) -> float | None:
    number, unit = _split(value)
    if not unit or unit == "m":
        if number != 1.0:
            raise UnitError("a dimensionless mass must be 1 (it defines the unit system)")
        return None
    if unit not in _SI["mass"]:
        raise UnitError(f"unit {unit!r} is not valid for mass; expected one of {sorted(_SI['mass'])}")
    return number * _SI["mass"][unit]
