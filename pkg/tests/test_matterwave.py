import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomtronic.matterwave import (
    DrainWaveSpec,
    detector_linewidth,
    detector_response,
    drain_frequency,
    standing_wave,
    wave_field,
    wave_params,
)


@st.composite
def wave_specs(draw):
    omega0 = draw(st.floats(1e-2, 1e3))
    return DrainWaveSpec(
        omega0=omega0,
        omega_d=omega0 * draw(st.floats(1.0, 1e3)),
        mass=draw(st.floats(1e-3, 1e3)),
        I_d=draw(st.just(0.0) | st.floats(1e-6, 1e6)),
        hbar=draw(st.sampled_from([1.0, 1.054571817e-34])),
    )


def rel(a, b):
    return abs(a - b) <= 1e-12 * max(abs(a), abs(b), 1e-300)


@given(wave_specs())
@settings(max_examples=200)
def test_wave_identities(spec):
    p = wave_params(spec)
    assert rel(p.F0, p.Z * p.I0)
    assert rel(p.k_m * p.v_m, spec.omega0)
    assert rel(p.lambda_d, p.n * p.lambda_m)
    assert rel(0.5 * p.F0 * p.I0, spec.I_d * spec.hbar * spec.omega0)
    if spec.I_d > 0:
        assert rel(p.P_Tot / p.P_d, spec.omega_d / spec.omega0)
    assert 0 < p.n <= 1


@given(wave_specs())
def test_de_broglie_wavelength(spec):
    p = wave_params(spec)
    h = 2 * math.pi * spec.hbar
    # particle of energy hbar omega_d
    assert p.lambda_dB == pytest.approx(h / math.sqrt(2 * spec.mass * spec.hbar * spec.omega_d), rel=1e-12)
    assert p.lambda_dB == pytest.approx(0.5 * p.n ** 2 * p.lambda_m, rel=1e-12)


@given(wave_specs())
def test_matteron_momentum(spec):
    p = wave_params(spec)
    assert p.p_matteron == pytest.approx(spec.hbar * p.k0, rel=1e-14)
    assert p.k0 == pytest.approx(2 * p.k_m / p.n, rel=1e-12)


@given(st.floats(1.0, 100.0), st.floats(1.01, 3.0))
def test_wavelengths_move_oppositely_with_drain_frequency(ratio, factor):
    lo = wave_params(DrainWaveSpec(1.0, ratio, 1.0, 1.0))
    hi = wave_params(DrainWaveSpec(1.0, ratio * factor, 1.0, 1.0))
    assert hi.lambda_m > lo.lambda_m
    assert hi.lambda_dB < lo.lambda_dB


def test_impedance_at_unit_index():
    p = wave_params(DrainWaveSpec(2.0, 2.0, 4.0, 1.0))
    assert p.n == 1.0
    assert p.Z == p.Z0 == pytest.approx(0.25)


def test_drain_frequency():
    assert drain_frequency(36) == 38.5
    assert drain_frequency(36, omega0=2.0, drop=3.0, hbar=0.5) == pytest.approx(83.0)


def test_spec_rejects_index_above_one():
    with pytest.raises(ValueError):
        DrainWaveSpec(1.0, 0.5, 1.0, 1.0)
    with pytest.raises(ValueError):
        DrainWaveSpec(1.0, 2.0, 1.0, -1.0)


def test_wave_field_travels():
    p = wave_params(DrainWaveSpec(1.0, 38.5, 1.0, 10.0))
    F, I = wave_field(p, 0.0, 0.0)
    assert F == pytest.approx(p.F0) and I == pytest.approx(p.I0)
    # crest moves at v_m
    F1, _ = wave_field(p, p.v_m * 0.7, 0.7)
    assert F1 == pytest.approx(p.F0)


def test_standing_wave_vs_time_average():
    p = wave_params(DrainWaveSpec(1.0, 10.0, 1.0, 4.0))
    b = 3.0
    z = np.linspace(-10, b, 57)
    t = np.linspace(0, 2 * math.pi, 4001)[:-1]
    inc = p.I0 * np.cos(p.k_m * z[:, None] - t)
    ref = -p.I0 * np.cos(p.k_m * (2 * b - z[:, None]) - t)
    average = np.mean((inc + ref) ** 2, axis=1)
    np.testing.assert_allclose(standing_wave(p, z, b), average, rtol=1e-10, atol=1e-12)
    assert standing_wave(p, b, b) == 0.0
    with pytest.raises(ValueError):
        standing_wave(p, b + 1, b)


def resonant_work(force, T):
    # undamped, m = 1, omega_s = omega0 = 1, starting at rest
    return force ** 2 / 2 * (
        math.sin(T) ** 2 / 2 + T ** 2 / 4 + T * math.sin(2 * T) / 4 + (math.cos(2 * T) - 1) / 8
    )


@pytest.mark.parametrize("T", [0.3, 1.0, 7.5, 60.0, 400.0])
def test_detector_resonant_undamped_exact(T):
    p = wave_params(DrainWaveSpec(1.0, 4.0, 1.0, 1.0))
    force = p.I0 * p.v_m * p.k_m
    assert detector_response(p, 1.0, 1.0, 0.0, T) == pytest.approx(resonant_work(force, T), rel=1e-9)


@pytest.mark.parametrize("omega_s", [0.6, 0.95, 1.0, 1.03, 1.4])
def test_detector_long_run_matches_lorentzian(omega_s):
    p = wave_params(DrainWaveSpec(1.0, 4.0, 1.0, 1.0))
    m_s, gamma, T = 2.0, 0.1, 4000.0
    f = p.I0 * p.v_m * p.k_m / m_s
    power = 0.5 * m_s * f ** 2 * gamma / ((omega_s ** 2 - 1) ** 2 + gamma ** 2)
    W = detector_response(p, m_s * omega_s ** 2, m_s, gamma, T)
    assert W / T == pytest.approx(power, rel=1e-2)


def test_detector_scan_peaks_on_resonance():
    p = wave_params(DrainWaveSpec(1.0, 4.0, 1.0, 1.0))
    damping, T = 0.02, 500.0
    omegas = np.linspace(0.5, 1.5, 101)
    W = np.array([detector_response(p, w * w, 1.0, damping, T) for w in omegas])
    assert abs(omegas[np.argmax(W)] - 1.0) <= omegas[1] - omegas[0]
    width = detector_linewidth(damping, T)
    far = detector_response(p, (1 + 10 * width) ** 2, 1.0, damping, T)
    assert far < 0.05 * W.max()


def test_detector_zero_wave_absorbs_nothing():
    p = wave_params(DrainWaveSpec(1.0, 4.0, 1.0, 0.0))
    assert detector_response(p, 1.0, 1.0, 0.1, 10.0) == 0.0


def test_detector_coupling_scales_quadratically():
    p = wave_params(DrainWaveSpec(1.0, 4.0, 1.0, 1.0))
    a = detector_response(p, 1.1, 1.0, 0.05, 50.0, coupling=1.0)
    b = detector_response(p, 1.1, 1.0, 0.05, 50.0, coupling=3.0)
    assert b == pytest.approx(9 * a, rel=1e-10)


def test_detector_validation():
    p = wave_params(DrainWaveSpec(1.0, 4.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        detector_response(p, 0.0, 1.0, 0.1, 1.0)
    with pytest.raises(ValueError):
        detector_response(p, 1.0, 1.0, -0.1, 1.0)
    with pytest.raises(ValueError):
        detector_response(p, 1.0, 1.0, 0.1, 0.0)
