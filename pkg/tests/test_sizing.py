"""Design-time calculators: capacitor sizing and the polling-rate screen."""

import pytest
from hypothesis import given, strategies as st

from ehsim.errors import DomainError
from ehsim.powerchain import usable_energy
from ehsim.sizing import (
    FEASIBLE,
    OVERSAMPLED,
    UNDERSAMPLED,
    apc_band,
    min_capacitance,
    recharge_time,
)


class TestMinCapacitance:
    def test_hand_value(self):
        # 100 uJ budget between 5 V and 3 V at unity efficiency:
        # C = 2*100e-6 / (25 - 9) = 12.5 uF
        assert min_capacitance(100e-6, 0.0, 1.0, 5.0, 3.0) == pytest.approx(12.5e-6)

    def test_efficiency_inflates(self):
        full = min_capacitance(100e-6, 0.0, 1.0, 5.0, 3.0)
        assert min_capacitance(100e-6, 0.0, 0.5, 5.0, 3.0) == pytest.approx(2 * full)

    def test_domain(self):
        with pytest.raises(DomainError):
            min_capacitance(1e-6, 0.0, 1.0, 3.0, 3.0)
        with pytest.raises(DomainError):
            min_capacitance(1e-6, 0.0, 0.0, 5.0, 3.0)
        with pytest.raises(DomainError):
            min_capacitance(-1e-6, 0.0, 1.0, 5.0, 3.0)

    @given(
        e_task=st.floats(1e-9, 1e-1),
        static=st.floats(0.0, 1e-2),
        eta=st.floats(0.3, 1.0),
        v_close=st.floats(0.1, 5.0),
        dv=st.floats(0.1, 5.0),
    )
    def test_inverse_identity(self, e_task, static, eta, v_close, dv):
        """The sized capacitor holds exactly the budget between the rails."""
        v_start = v_close + dv
        c = min_capacitance(e_task, static, eta, v_start, v_close)
        budget = usable_energy(c, v_start, v_close) * eta
        assert budget == pytest.approx(e_task + static, rel=1e-12)


class TestRechargeTime:
    def test_closed_form(self):
        # 6800 uF from 3.7 V to 5.2 V at 167 uW
        t = recharge_time(6800e-6, 3.7, 5.2, 167e-6)
        assert t == pytest.approx(0.5 * 6800e-6 * (5.2**2 - 3.7**2) / 167e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            recharge_time(1e-6, 1.0, 2.0, 0.0)
        with pytest.raises(DomainError):
            recharge_time(1e-6, 2.0, 1.0, 1e-3)


class TestApcBand:
    # camera-like numbers: 4700 uF tank, 206.8 uJ checkpoint record
    KW = dict(
        capacitance=4700e-6,
        v_psleep=2.4,
        v_pclose=2.2,
        e_sample=1.29e-6,
        base_power=27.005e-6,
        checkpoint_energy=206.8e-6,
        sustainable_harvest=40e-6,
        max_dv_dt=0.05,
    )

    def test_verdict_partition(self):
        rows = apc_band(fs_candidates=[0.1, 4.0, 20.0], **self.KW)
        verdicts = {r["fs"]: r["verdict"] for r in rows}
        assert verdicts[20.0] == OVERSAMPLED    # 20*1.29u + 27u > 40u
        assert verdicts[0.1] == UNDERSAMPLED    # 0.5 V of fall per poll period
        assert verdicts[4.0] == FEASIBLE

    def test_static_power_column(self):
        (row,) = apc_band(fs_candidates=[4.0], **self.KW)
        assert row["static_power"] == pytest.approx(27.005e-6 + 4 * 1.29e-6)

    def test_checkpoint_floor_above_close(self):
        (row,) = apc_band(fs_candidates=[4.0], **self.KW)
        assert row["v_ckpt_floor"] > self.KW["v_pclose"]

    def test_bad_rate_rejected(self):
        with pytest.raises(DomainError):
            apc_band(fs_candidates=[0.0], **self.KW)

    def test_threshold_order_enforced(self):
        kw = dict(self.KW, v_psleep=2.0)
        with pytest.raises(DomainError):
            apc_band(fs_candidates=[4.0], **kw)
