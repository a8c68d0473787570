import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomtronic.circuit import (
    BatterySpec,
    ConvergenceError,
    GateCircuitSpec,
    OutOfBandError,
    UnstableBiasError,
    bias_current,
    coupling_potential,
    current_gain,
    fixed_point_drain_current,
    lower_entry_probability,
    matched_phase,
    phase_potential,
    q_limited_amplitude,
    solve_steady_state,
    transconductance,
)
from atomtronic.coupling import CouplingTable, TransistorSpec
from atomtronic.oscillator import OscillatorConfig

CFG = OscillatorConfig()
TABLE = CouplingTable.build(TransistorSpec())


def make(mu_B=2.0, T_B=2 / 3, R_I=0.05, C_S=10.0, C_G=10.0, Q=None, V_SS=0.0):
    battery = BatterySpec(mu_B=mu_B, T_B=T_B, V_SS=V_SS, R_I=R_I, C_S=C_S)
    gate = GateCircuitSpec.from_table(TABLE, C_G=C_G, Q=Q)
    return battery, gate


def g_m_of(battery, gate):
    return transconductance(gate.chi0, CFG.N, gate.C_G, battery.C_S, battery.mu_B)


def test_rho_cold_battery():
    battery, _ = make(T_B=2 / 3)
    assert lower_entry_probability(battery, CFG) == pytest.approx(1 - math.exp(-1.5), rel=1e-15)


@given(st.floats(1e-3, 1e3))
def test_rho_in_unit_interval_and_decreasing(T):
    r1 = lower_entry_probability(BatterySpec(1.0, T), CFG)
    r2 = lower_entry_probability(BatterySpec(1.0, T * 1.5), CFG)
    assert 0.0 <= r1 <= 1.0
    assert r2 <= r1


def test_bias_current_formula():
    battery, gate = make()
    assert bias_current(battery, 0.01, CFG) == pytest.approx(2.0 * 10.0 * 0.01 * math.exp(-1.5), rel=1e-15)
    with pytest.raises(ValueError):
        bias_current(battery, -1.0, CFG)


def test_coupling_potential_and_phase():
    V0 = coupling_potential(0.01, 36, 5.0, 2.0)
    assert V0 == pytest.approx(0.6)
    V = phase_potential(V0)
    assert V(0.0) == pytest.approx(-V0)
    assert V(math.pi) == pytest.approx(V0)
    with pytest.raises(ValueError):
        coupling_potential(0.01, 36, 5.0, -1.0)


def test_matched_phase():
    assert matched_phase(0.0, 1.0) == pytest.approx(math.pi / 2)
    assert -1.0 * math.cos(matched_phase(0.3, 1.0)) == pytest.approx(-0.3)
    with pytest.raises(OutOfBandError):
        matched_phase(1.5, 1.0)


def test_current_gain():
    assert current_gain(2.0, 0.01, 0.5) == pytest.approx(400.0)
    with pytest.raises(ValueError):
        current_gain(2.0, 0.0, 0.5)


@st.composite
def circuits(draw):
    mu_B = draw(st.floats(0.1, 10))
    T_B = draw(st.floats(0.1, 10))
    C_S = draw(st.floats(0.1, 20))
    C_G = draw(st.floats(0.1, 20))
    loop = draw(st.floats(0.1, 50))
    battery, gate = make(mu_B=mu_B, T_B=T_B, C_S=C_S, C_G=C_G, R_I=0.0)
    R_I = (loop - 1.0) / g_m_of(battery, gate)
    return make(mu_B=mu_B, T_B=T_B, C_S=C_S, C_G=C_G, R_I=R_I, Q=draw(st.none() | st.floats(1, 1e6)))


@given(circuits())
@settings(max_examples=100, deadline=None)
def test_closed_form_matches_fixed_point(args):
    battery, gate = args
    state = solve_steady_state(battery, gate, CFG)
    assert state.I_dss_fixed_point == pytest.approx(state.I_dss, rel=1e-10)


@given(circuits())
@settings(max_examples=100, deadline=None)
def test_steady_state_invariants(args):
    battery, gate = args
    s = solve_steady_state(battery, gate, CFG)
    assert s.I_dss >= 0
    assert 0 <= s.rho <= 1
    assert s.r_gs <= 0
    assert s.alpha_sq <= CFG.N
    assert s.mu_g > s.mu_s
    ulp = math.ulp(max(abs(s.mu_g), abs(s.mu_s)))
    assert abs((s.mu_g - s.mu_s) - s.rho * CFG.energy_quantum) <= ulp


def test_closed_form_value():
    battery, gate = make()
    s = solve_steady_state(battery, gate, CFG)
    g_m = g_m_of(battery, gate)
    mu = 2.0 + (1 - math.exp(-1.5))
    assert s.I_dss == pytest.approx(g_m * mu / (1 + g_m * 0.05), rel=1e-15)
    assert s.P_b == pytest.approx(s.I_dss ** 2 * 0.05)
    assert s.P_g == pytest.approx(-s.rho * s.I_dss)


def test_r_gs_negative_resistance():
    battery, gate = make()
    s = solve_steady_state(battery, gate, CFG)
    assert s.r_gs == pytest.approx(-(s.mu_g - s.mu_s) / s.I_dss, rel=1e-12)


def test_drain_current_decreases_with_source_resistance():
    currents = [solve_steady_state(*make(R_I=r), CFG).I_dss for r in np.linspace(0, 1, 11)]
    assert all(b <= a for a, b in zip(currents, currents[1:]))


def test_fixed_point_with_strong_feedback():
    battery, gate = make(R_I=0.0)
    R_I = 9.0 / g_m_of(battery, gate)  # g_m R_I = 9: undamped iteration diverges
    battery, gate = make(R_I=R_I)
    I_fp, iterations = fixed_point_drain_current(battery, gate, CFG)
    assert I_fp == pytest.approx(solve_steady_state(battery, gate, CFG).I_dss, rel=1e-12)
    assert iterations < 10_000


def test_fixed_point_reports_nonconvergence():
    battery, gate = make()
    with pytest.raises(ConvergenceError):
        fixed_point_drain_current(battery, gate, CFG, max_iter=2)


def test_unstable_bias_rejected():
    battery, gate = make(R_I=0.0)
    battery, gate = make(R_I=-1.5 / g_m_of(battery, gate))
    with pytest.raises(UnstableBiasError):
        solve_steady_state(battery, gate, CFG)


def test_zero_coupling_gives_zero_current():
    table = CouplingTable.build(TransistorSpec(theta=math.pi / 2))
    battery = BatterySpec(mu_B=2.0, T_B=1.0, R_I=0.1, C_S=1.0)
    s = solve_steady_state(battery, GateCircuitSpec.from_table(table, C_G=1.0), CFG)
    assert s.g_m == 0.0
    assert s.I_dss == 0.0
    assert s.r_gs == -math.inf


def test_bias_voltage_does_not_enter_drain_current():
    a = solve_steady_state(*make(V_SS=0.0), CFG)
    b = solve_steady_state(*make(V_SS=50.0), CFG)
    assert a.I_dss == b.I_dss


def test_infinite_q_keeps_full_amplitude():
    s = solve_steady_state(*make(Q=None), CFG)
    assert s.alpha_sq == CFG.N
    assert not s.saturated
    assert s.P_osc == 0.0


def test_low_q_clips_amplitude():
    battery, gate = make(Q=10.0)
    s = solve_steady_state(battery, gate, CFG)
    load = gate.Gamma_osc * s.mu_g * gate.C_G
    assert s.saturated
    assert s.alpha_sq == pytest.approx(s.rho / load, rel=1e-14)
    assert s.P_osc == pytest.approx(s.rho * CFG.energy_quantum, rel=1e-14)


@given(st.floats(1, 1e8))
def test_amplitude_threshold_consistent(Q):
    battery, gate = make(Q=Q)
    s = solve_steady_state(battery, gate, CFG)
    amp = q_limited_amplitude(s, gate, CFG)
    load = gate.Gamma_osc * s.mu_g * gate.C_G
    assert amp.saturated == (s.rho < load * CFG.N)
    assert amp.alpha_sq <= CFG.N


@pytest.mark.parametrize(
    "kwargs", [{"mu_B": 0.0}, {"T_B": 0.0}, {"C_S": -1.0}]
)
def test_battery_validation(kwargs):
    with pytest.raises(ValueError):
        make(**kwargs)


def test_gate_validation():
    with pytest.raises(ValueError):
        GateCircuitSpec.from_table(TABLE, C_G=0.0)
    with pytest.raises(ValueError):
        GateCircuitSpec.from_table(TABLE, C_G=1.0, Q=-1.0)
    with pytest.raises(ValueError):
        GateCircuitSpec.from_table(TABLE, C_G=1.0, mode_sign=0)
