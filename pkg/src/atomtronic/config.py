"""Run configuration: one TOML file, sections mirroring the physics types."""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .circuit import BatterySpec, GateCircuitSpec
from .coupling import CouplingTable, TransistorSpec
from .oscillator import OscillatorConfig
from .units import Scales, UnitError, parse_mass, parse_oscillator_frequency, parse_quantity

__all__ = [
    "ConfigError",
    "RunConfig",
    "SweepSpec",
    "SWEEP_PARAMETERS",
    "load_config",
    "parse_config",
    "default_config_text",
    "coupling_table",
]

SWEEP_PARAMETERS = ("T_B", "mu_B", "R_I", "C_G", "C_S", "kappa", "theta", "Q", "N", "V_SS")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TransistorSection:
    theta: float = math.pi / 4
    kappa: float = 0.1
    gamma: float = 1.0
    eta: float = 1.0


@dataclass(frozen=True)
class GateSection:
    C_G: float = 10.0
    Q: float | None = None
    mode_sign: int = -1


@dataclass(frozen=True)
class StatesSection:
    ratios: tuple[float, ...] = (0.56, 0.84)
    points: int = 1001


@dataclass(frozen=True)
class CouplingSection:
    points: int = 401
    normalized: bool = False


@dataclass(frozen=True)
class DetectorSection:
    damping: float = 0.02
    duration: float = 500.0
    mass: float = 1.0
    coupling: float = 1.0
    omega_min: float = 0.5
    omega_max: float = 1.5
    count: int = 101


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    count: int

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count - 1)] + [self.stop]


@dataclass(frozen=True)
class OutputSection:
    path: str | None = None
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    oscillator: OscillatorConfig
    transistor: TransistorSection
    battery: BatterySpec
    gate: GateSection
    states: StatesSection = StatesSection()
    coupling: CouplingSection = CouplingSection()
    detector: DetectorSection = DetectorSection()
    sweep: SweepSpec | None = None
    output: OutputSection = OutputSection()
    scales: Scales = Scales()
    source: dict = field(default_factory=dict, compare=False, hash=False)

    def transistor_spec(self) -> TransistorSpec:
        t = self.transistor
        return TransistorSpec(theta=t.theta, kappa=t.kappa, gamma=t.gamma, cfg=self.oscillator)

    def table(self) -> CouplingTable:
        return coupling_table(self.transistor_spec(), self.transistor.eta, self.coupling.normalized)

    def gate_spec(self) -> GateCircuitSpec:
        g = self.gate
        return GateCircuitSpec.from_table(self.table(), C_G=g.C_G, Q=g.Q, mode_sign=g.mode_sign)

    def with_parameter(self, name: str, value: float) -> "RunConfig":
        """Copy with one whitelisted parameter replaced (oscillator units)."""
        if name not in SWEEP_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter {name!r}; allowed: {', '.join(SWEEP_PARAMETERS)}")
        try:
            if name in ("T_B", "mu_B", "R_I", "C_S", "V_SS"):
                return replace(self, battery=replace(self.battery, **{name: value}))
            if name in ("kappa", "theta"):
                return replace(self, transistor=replace(self.transistor, **{name: value}))
            if name == "C_G":
                return replace(self, gate=replace(self.gate, C_G=value))
            if name == "Q":
                return replace(self, gate=replace(self.gate, Q=value))
            if int(round(value)) < 1:
                raise ConfigError(f"N must be >= 1, got {value}")
            return replace(self, oscillator=replace(self.oscillator, N=int(round(value))))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"sweep value {name} = {value!r}: {exc}") from exc


@lru_cache(maxsize=64)
def coupling_table(spec: TransistorSpec, eta: float, normalized: bool) -> CouplingTable:
    return CouplingTable.build(spec, eta=eta, normalized=normalized)


def default_config_text() -> str:
    return resources.files("atomtronic").joinpath("data/default.toml").read_text(encoding="utf-8")


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        text = default_config_text()
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    return parse_config(raw)


_KNOWN = {
    "oscillator": {"N", "omega0", "mass"},
    "transistor": {"theta", "kappa", "gamma", "eta", "a_s", "area"},
    "battery": {"mu_B", "T_B", "V_SS", "R_I", "C_S"},
    "gate": {"C_G", "Q", "mode"},
    "states": {"ratios", "points"},
    "coupling": {"points", "normalized"},
    "detector": {"damping", "duration", "mass", "coupling", "omega_min", "omega_max", "count"},
    "sweep": {"parameter", "start", "stop", "count"},
    "output": {"path", "format"},
}


def _int(value, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


def parse_config(raw: dict) -> RunConfig:
    """Validate a parsed TOML mapping and convert every quantity to oscillator units."""
    for section, body in raw.items():
        if section not in _KNOWN:
            raise ConfigError(f"unknown section [{section}]")
        if not isinstance(body, dict):
            raise ConfigError(f"[{section}] must be a table")
        extra = set(body) - _KNOWN[section]
        if extra:
            raise ConfigError(f"unknown keys in [{section}]: {', '.join(sorted(extra))}")
    try:
        return _parse(raw)
    except UnitError as exc:
        raise ConfigError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _parse(raw: dict) -> RunConfig:
    osc = raw.get("oscillator", {})
    _, omega_si = parse_oscillator_frequency(osc.get("omega0", 1.0))
    mass_si = parse_mass(osc.get("mass", 1.0))
    if (omega_si is None) != (mass_si is None):
        raise ConfigError("give both omega0 and mass with SI units, or neither")
    scales = Scales(omega0=omega_si, mass=mass_si)
    oscillator = OscillatorConfig(N=_int(osc.get("N", 36), "oscillator.N", 1))

    def q(section, key, dimension, default):
        return parse_quantity(raw.get(section, {}).get(key, default), dimension, scales)

    tr = raw.get("transistor", {})
    if "eta" in tr and ("a_s" in tr or "area" in tr):
        raise ConfigError("[transistor] takes either eta or a_s + area, not both")
    if "a_s" in tr or "area" in tr:
        if not ("a_s" in tr and "area" in tr):
            raise ConfigError("[transistor] needs both a_s and area")
        a_s, area = q("transistor", "a_s", "length", 0), q("transistor", "area", "area", 0)
        if not (a_s > 0 and area > 0):
            raise ConfigError("a_s and area must be positive")
        eta = 4.0 * math.pi * a_s / area  # hbar = m = 1
    else:
        eta = float(tr.get("eta", 1.0))
    transistor = TransistorSection(
        theta=q("transistor", "theta", "angle", math.pi / 4),
        kappa=q("transistor", "kappa", "angle", 0.1),
        gamma=q("transistor", "gamma", "rate", 1.0),
        eta=eta,
    )
    TransistorSpec(transistor.theta, transistor.kappa, transistor.gamma, oscillator)

    battery = BatterySpec(
        mu_B=q("battery", "mu_B", "energy", 2.0),
        T_B=q("battery", "T_B", "temperature", 1.0 / 1.5),
        V_SS=q("battery", "V_SS", "energy", 20.0),
        R_I=q("battery", "R_I", "resistance", 0.05),
        C_S=q("battery", "C_S", "capacitance", 10.0),
    )

    g = raw.get("gate", {})
    Q = g.get("Q")
    if isinstance(Q, str) and Q.strip().lower() in ("inf", "infinity"):
        Q = None
    elif Q is not None:
        Q = float(Q)
        if not Q > 0:
            raise ConfigError(f"gate.Q must be positive, got {Q}")
    mode = g.get("mode", "antisymmetric")
    if mode not in ("antisymmetric", "symmetric"):
        raise ConfigError(f"gate.mode must be 'antisymmetric' or 'symmetric', got {mode!r}")
    C_G = q("gate", "C_G", "capacitance", 10.0)
    if not C_G > 0:
        raise ConfigError(f"gate.C_G must be positive, got {C_G}")
    gate = GateSection(C_G=C_G, Q=Q, mode_sign=-1 if mode == "antisymmetric" else 1)

    st = raw.get("states", {})
    ratios = st.get("ratios", [0.56, 0.84])
    if not isinstance(ratios, list) or not ratios:
        raise ConfigError("states.ratios must be a non-empty list of |alpha|^2/N values")
    for r in ratios:
        if isinstance(r, bool) or not isinstance(r, (int, float)) or not math.isfinite(r) or r < 0:
            raise ConfigError(f"states.ratios entries must be finite numbers >= 0, got {r!r}")
    states = StatesSection(ratios=tuple(float(r) for r in ratios), points=_int(st.get("points", 1001), "states.points", 2))

    cp = raw.get("coupling", {})
    normalized = cp.get("normalized", False)
    if not isinstance(normalized, bool):
        raise ConfigError("coupling.normalized must be true or false")
    coupling = CouplingSection(points=_int(cp.get("points", 401), "coupling.points", 2), normalized=normalized)

    dt = raw.get("detector", {})
    detector = DetectorSection(
        damping=q("detector", "damping", "rate", 0.02),
        duration=q("detector", "duration", "time", 500.0),
        mass=q("detector", "mass", "mass", 1.0),
        coupling=float(dt.get("coupling", 1.0)),
        omega_min=q("detector", "omega_min", "rate", 0.5),
        omega_max=q("detector", "omega_max", "rate", 1.5),
        count=_int(dt.get("count", 101), "detector.count", 2),
    )
    if detector.damping < 0 or not detector.duration > 0 or not detector.mass > 0:
        raise ConfigError("detector needs damping >= 0, duration > 0 and mass > 0")
    if not 0 < detector.omega_min < detector.omega_max:
        raise ConfigError("detector needs 0 < omega_min < omega_max")

    sweep = None
    if "sweep" in raw:
        sw = raw["sweep"]
        name = sw.get("parameter")
        if name not in SWEEP_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter {name!r}; allowed: {', '.join(SWEEP_PARAMETERS)}")
        dim = {
            "T_B": "temperature", "mu_B": "energy", "V_SS": "energy", "R_I": "resistance",
            "C_G": "capacitance", "C_S": "capacitance", "kappa": "angle", "theta": "angle",
        }.get(name)
        conv = (lambda v: parse_quantity(v, dim, scales)) if dim else float
        if "start" not in sw or "stop" not in sw:
            raise ConfigError("[sweep] needs start and stop")
        sweep = SweepSpec(name, conv(sw["start"]), conv(sw["stop"]), _int(sw.get("count", 11), "sweep.count", 2))

    out = raw.get("output", {})
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"output.format must be csv or json, got {fmt!r}")
    output = OutputSection(path=out.get("path"), format=fmt)

    return RunConfig(
        oscillator=oscillator,
        transistor=transistor,
        battery=battery,
        gate=gate,
        states=states,
        coupling=coupling,
        detector=detector,
        sweep=sweep,
        output=output,
        scales=scales,
        source=copy.deepcopy(raw),
    )
