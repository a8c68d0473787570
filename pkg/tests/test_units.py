import math

import pytest
from scipy import constants

from atomtronic.units import Scales, UnitError, parse_mass, parse_oscillator_frequency, parse_quantity

RB = Scales(omega0=2 * math.pi * 100.0, mass=87 * constants.atomic_mass)


def test_bare_numbers_pass_through():
    assert parse_quantity(2.5, "energy") == 2.5
    assert parse_quantity("2.5", "energy") == 2.5
    assert parse_quantity(3, "length") == 3.0


def test_oscillator_tokens():
    assert parse_quantity("0.25 pi", "angle") == pytest.approx(math.pi / 4)
    assert parse_quantity("90 deg", "angle") == pytest.approx(math.pi / 2)
    assert parse_quantity("1.5 hw", "energy") == 1.5


def test_si_temperature():
    T = parse_quantity("10 nK", "temperature", RB)
    assert T == pytest.approx(10e-9 * constants.k / (constants.hbar * RB.omega0), rel=1e-14)


def test_si_length_and_area_consistent():
    l0 = math.sqrt(constants.hbar / (RB.mass * RB.omega0))
    assert parse_quantity("1 um", "length", RB) == pytest.approx(1e-6 / l0, rel=1e-14)
    assert parse_quantity("1 um^2", "area", RB) == pytest.approx((1e-6 / l0) ** 2, rel=1e-14)


def test_si_needs_physical_scales():
    with pytest.raises(UnitError):
        parse_quantity("10 nK", "temperature")


def test_wrong_unit_for_dimension():
    with pytest.raises(UnitError, match="not valid"):
        parse_quantity("3 nK", "length", RB)


@pytest.mark.parametrize("value", ["abc", "1..2 m", True, None, [1]])
def test_unparseable(value):
    with pytest.raises(UnitError):
        parse_quantity(value, "length")


def test_oscillator_frequency():
    assert parse_oscillator_frequency(1) == (1.0, None)
    assert parse_oscillator_frequency("100 Hz")[1] == pytest.approx(2 * math.pi * 100)
    assert parse_oscillator_frequency("5 rad/s")[1] == 5.0
    with pytest.raises(UnitError):
        parse_oscillator_frequency(2.0)
    with pytest.raises(UnitError):
        parse_oscillator_frequency("3 K")


def test_mass():
    assert parse_mass(1.0) is None
    assert parse_mass("87 amu") == pytest.approx(87 * constants.atomic_mass)
    with pytest.raises(UnitError):
        parse_mass(2.0)
