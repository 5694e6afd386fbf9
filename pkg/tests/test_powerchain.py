"""Storage/regulator models and the energy-voltage closed forms."""

import math

import pytest
from hypothesis import given, strategies as st

from ehsim.errors import ConfigError, DomainError
from ehsim.powerchain import (
    Regulator,
    Storage,
    charge_time_const_power,
    regulator_draw,
    stored_energy,
    usable_energy,
    voltage_from_energy,
)


class TestStoredEnergy:
    def test_known_value(self):
        # 10 uF at 5 V holds 125 uJ
        assert stored_energy(10e-6, 5.0) == pytest.approx(125e-6)

    def test_zero_voltage(self):
        assert stored_energy(1e-6, 0.0) == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            stored_energy(0.0, 1.0)
        with pytest.raises(DomainError):
            stored_energy(1e-6, -0.1)

    @given(c=st.floats(1e-9, 1.0), v=st.floats(0.0, 100.0))
    def test_voltage_round_trip(self, c, v):
        v2 = voltage_from_energy(c, stored_energy(c, v))
        assert v2 == pytest.approx(v, rel=1e-12, abs=1e-15)


class TestUsableEnergy:
    def test_difference_of_levels(self):
        assert usable_energy(10e-6, 5.0, 3.6) == pytest.approx(125e-6 - 64.8e-6)

    def test_ordering_enforced(self):
        with pytest.raises(DomainError):
            usable_energy(1e-6, 1.0, 2.0)


class TestChargeTime:
    def test_linear_in_energy(self):
        # 4700 uF from 0 to 4.7 V at 1.2 mW
        t = charge_time_const_power(4700e-6, 0.0, 4.7, 1.2e-3)
        assert t == pytest.approx(0.5 * 4700e-6 * 4.7**2 / 1.2e-3)

    def test_positive_power_required(self):
        with pytest.raises(DomainError):
            charge_time_const_power(1e-6, 0.0, 1.0, 0.0)


class TestStorage:
    def test_properties(self):
        s = Storage(capacitance=10e-6, v_max=6.0, v0=5.0)
        assert s.e_max == pytest.approx(180e-6)
        assert s.e0 == pytest.approx(125e-6)

    def test_leak_default_off(self):
        assert Storage(1e-6, 5.0).r_leak == math.inf

    def test_validation(self):
        with pytest.raises(ConfigError):
            Storage(0.0, 5.0)
        with pytest.raises(ConfigError):
            Storage(1e-6, 5.0, v0=5.1)
        with pytest.raises(ConfigError):
            Storage(1e-6, 5.0, r_leak=0.0)


class TestRegulator:
    def test_draw_formula(self):
        reg = Regulator(efficiency=0.8, p_quiescent=5e-6)
        assert regulator_draw(reg, 1e-3) == pytest.approx(1e-3 / 0.8 + 5e-6)

    def test_defaults_are_lossless(self):
        assert regulator_draw(Regulator(), 1e-3) == 1e-3

    def test_validation(self):
        with pytest.raises(ConfigError):
            Regulator(efficiency=0.0)
        with pytest.raises(ConfigError):
            Regulator(efficiency=1.1)
        with pytest.raises(ConfigError):
            Regulator(p_quiescent=-1e-9)
        with pytest.raises(DomainError):
            regulator_draw(Regulator(), -1.0)
