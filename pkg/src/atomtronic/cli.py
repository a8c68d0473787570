"""Command-line front end.

Each subcommand turns a run configuration into a :class:`ResultTable`;
``main`` handles flags, output and exit codes (0 ok, 2 config, 3 solver,
4 I/O).
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .circuit import CircuitError, CircuitState, OutOfBandError, solve_steady_state
from .config import ConfigError, RunConfig, load_config
from .coupling import coupling_factor, coupling_peak
from .matterwave import (
    DrainWaveSpec,
    MatterwaveParams,
    detector_linewidth,
    detector_response,
    drain_frequency,
    wave_params,
)
from .oscillator import (
    CENTER_TIME,
    TURNAROUND_TIME,
    density_fwhm,
    position_density,
    position_moments,
    truncated_coherent_state,
)
from .results import ResultTable

__all__ = [
    "main",
    "cmd_states",
    "cmd_coupling",
    "cmd_steady_state",
    "cmd_sweep",
    "cmd_matterwave",
    "cmd_detector",
    "STEADY_STATE_COLUMNS",
]

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4

CIRCUIT_COLUMNS = (
    "rho", "I_0", "chi0", "g_m", "V0", "beta", "I_dss", "I_dss_fixed_point",
    "mu_s", "mu_g", "r_gs", "P_b", "P_g", "P_osc", "alpha_sq", "saturated", "mode_sign",
)
WAVE_COLUMNS = ("n", "Z", "k_m", "v_m", "F0", "I0_wave", "lambda_m", "lambda_d", "P_d", "P_Tot", "p_matteron")
STEADY_STATE_COLUMNS = CIRCUIT_COLUMNS + WAVE_COLUMNS


def _wave(config: RunConfig, state: CircuitState) -> MatterwaveParams:
    osc = config.oscillator
    omega_d = drain_frequency(osc.N, osc.omega0, config.battery.V_SS, osc.hbar)
    return wave_params(DrainWaveSpec(osc.omega0, omega_d, osc.mass, state.I_dss, osc.hbar))


def _steady_row(config: RunConfig) -> list:
    state = solve_steady_state(config.battery, config.gate_spec(), config.oscillator)
    wave = asdict(_wave(config, state))
    wave["I0_wave"] = wave["I0"]
    circuit = asdict(state)
    return [circuit[c] for c in CIRCUIT_COLUMNS] + [wave[c] for c in WAVE_COLUMNS]


def cmd_states(config: RunConfig) -> ResultTable:
    """Position densities of truncated coherent states at turnaround and center."""
    N = config.oscillator.N
    half = 2.0 * math.sqrt(2 * N + 1)
    x = np.linspace(-half, half, config.states.points)
    columns, data, stats = ["x"], [x], {}
    for ratio in config.states.ratios:
        state = truncated_coherent_state(math.sqrt(ratio * N), config.oscillator)
        for label, t in (("turnaround", TURNAROUND_TIME), ("center", CENTER_TIME)):
            name = f"density_{ratio:g}_{label}"
            rho = position_density(state, x, t)
            mean, var = position_moments(state, t)
            columns.append(name)
            data.append(rho)
            stats[name] = {
                "mean": mean,
                "variance": var,
                "fwhm": density_fwhm(state, t),
                "integral": float(np.trapezoid(rho, x)),
            }
    rows = np.column_stack(data).tolist()
    return ResultTable(columns, rows, {"ground_state_variance": 0.5, "curves": stats})


def cmd_coupling(config: RunConfig) -> ResultTable:
    """|alpha| times the coupling factor over [0, 2 sqrt(N)], scaled so the sampled maximum is 1."""
    table = config.table()
    a = np.linspace(0.0, 2.0 * math.sqrt(table.N), config.coupling.points)
    c = coupling_factor(a, table)
    ac = a * c
    top = ac.max()
    relative = ac / top if top > 0 else np.zeros_like(ac)
    peak = coupling_peak(table)
    rows = np.column_stack([a, relative, ac, c]).tolist()
    meta = {
        "chi0": table.chi0,
        "normalized_chi": table.normalized,
        "peak_abs_alpha": peak.alpha,
        "peak_value": peak.value,
        "peak_over_chi0_sqrtN": peak.ratio,
    }
    return ResultTable(["abs_alpha", "relative", "alpha_chi", "chi"], rows, meta)


def cmd_steady_state(config: RunConfig) -> ResultTable:
    """One-row circuit steady state with the emitted matterwave."""
    return ResultTable(list(STEADY_STATE_COLUMNS), [_steady_row(config)])


def _threads(count: int) -> int:
    raw = os.environ.get("ART_THREADS")
    if raw is None:
        return max(1, min(count, os.cpu_count() or 1))
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"ART_THREADS must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise ConfigError(f"ART_THREADS must be a positive integer, got {raw!r}")
    return min(cap, count)


def cmd_sweep(config: RunConfig) -> ResultTable:
    """Steady state at every sweep point; rows come back in sweep order."""
    sweep = config.sweep
    if sweep is None:
        raise ConfigError("the sweep command needs a [sweep] section")
    values = sweep.values()
    configs = [config.with_parameter(sweep.parameter, v) for v in values]
    with ThreadPoolExecutor(max_workers=_threads(len(configs))) as pool:
        rows = list(pool.map(_steady_row, configs))
    rows = [[v] + row for v, row in zip(values, rows)]
    return ResultTable([sweep.parameter] + list(STEADY_STATE_COLUMNS), rows, {"sweep": asdict(sweep)})


def cmd_matterwave(config: RunConfig) -> ResultTable:
    """Wave quantities of the steady-state drain current."""
    state = solve_steady_state(config.battery, config.gate_spec(), config.oscillator)
    wave = asdict(_wave(config, state))
    return ResultTable(list(wave), [list(wave.values())], {"I_d": state.I_dss})


def cmd_detector(config: RunConfig) -> ResultTable:
    """Absorbed energy of a mass-spring detector scanned across the wave frequency."""
    det = config.detector
    state = solve_steady_state(config.battery, config.gate_spec(), config.oscillator)
    wave = _wave(config, state)
    omegas = np.linspace(det.omega_min, det.omega_max, det.count)
    absorbed = np.array(
        [detector_response(wave, det.mass * w * w, det.mass, det.damping, det.duration, det.coupling) for w in omegas]
    )
    # steady-state Lorentzian, for comparison
    w0, g = wave.omega0, det.damping
    lorentz = g * w0 ** 2 / ((omegas ** 2 - w0 ** 2) ** 2 + (g * w0) ** 2) if g > 0 else np.zeros_like(omegas)
    top = absorbed.max()
    relative = absorbed / top if top > 0 else np.zeros_like(absorbed)
    lrel = lorentz / lorentz.max() if lorentz.max() > 0 else lorentz
    meta = {
        "linewidth": detector_linewidth(det.damping, det.duration),
        "peak_omega_s": float(omegas[int(np.argmax(absorbed))]),
        "omega0": w0,
    }
    rows = np.column_stack([omegas, absorbed, relative, lrel]).tolist()
    return ResultTable(["omega_s", "absorbed", "relative", "lorentzian_relative"], rows, meta)


COMMANDS = {
    "states": cmd_states,
    "coupling": cmd_coupling,
    "steady-state": cmd_steady_state,
    "sweep": cmd_sweep,
    "matterwave": cmd_matterwave,
    "detector": cmd_detector,
}


def _add_common(parser, default):
    parser.add_argument("--config", default=default, help="TOML run configuration (default: bundled example)")
    parser.add_argument("--output", default=default, help="output file (default: [output] path, else stdout)")
    parser.add_argument(
        "--format", choices=("csv", "json"), default=default, help="output format (default: [output] format, else csv)"
    )
    parser.add_argument(
        "--reproducible", action="store_true", default=default or False, help="omit the timestamp metadata line"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atomtronic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, None)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        # global flags may also follow the subcommand; SUPPRESS keeps the
        # subparser from overwriting values given before it
        p = sub.add_parser(name, help=fn.__doc__.splitlines()[0] if fn.__doc__ else None)
        _add_common(p, argparse.SUPPRESS)
    return parser


def _error(message: str, code: int) -> int:
    print(f"atomtronic: error: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        return _error(str(exc), EXIT_CONFIG)
    except OSError as exc:
        return _error(str(exc), EXIT_IO)
    try:
        table = COMMANDS[args.command](config)
    except ConfigError as exc:
        return _error(str(exc), EXIT_CONFIG)
    except (CircuitError, OutOfBandError, ArithmeticError) as exc:
        return _error(str(exc), EXIT_SOLVER)
    except ValueError as exc:
        # parameters that pass parsing but violate a physical constraint
        return _error(str(exc), EXIT_CONFIG)

    meta = {"version": __version__, "command": args.command}
    if not args.reproducible:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    meta["config"] = config.source
    meta.update(table.metadata)
    table.metadata = meta

    fmt = args.format or config.output.format
    text = table.render(fmt)
    path = args.output or config.output.path
    try:
        if path is None or path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        return _error(str(exc), EXIT_IO)
    return EXIT_OK
