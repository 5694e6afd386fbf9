"""Trace parsing, synthesis, and the zero-order-hold query helpers."""

import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ehsim.errors import ConfigError, DomainError, TraceParseError
from ehsim.trace import (
    ExcitationSpec,
    PowerTrace,
    average_power,
    load_trace,
    power_at,
    save_trace,
    synth_trace,
    trace_energy,
)


class TestPowerTraceValidation:
    def test_minimal_trace(self):
        tr = PowerTrace(np.array([0.0]), np.array([1e-6]), duration=10.0)
        assert len(tr) == 1

    def test_first_sample_must_be_t0(self):
        with pytest.raises(ConfigError, match="t=0"):
            PowerTrace(np.array([1.0]), np.array([1e-6]), duration=2.0)

    def test_times_strictly_increasing(self):
        with pytest.raises(ConfigError, match="increasing"):
            PowerTrace(np.array([0.0, 1.0, 1.0]), np.array([1.0, 2.0, 3.0]), duration=2.0)

    def test_negative_power_rejected(self):
        with pytest.raises(ConfigError, match=">= 0"):
            PowerTrace(np.array([0.0]), np.array([-1e-9]), duration=1.0)

    def test_duration_cannot_cut_samples(self):
        with pytest.raises(ConfigError, match="shorter"):
            PowerTrace(np.array([0.0, 5.0]), np.array([1.0, 1.0]), duration=4.0)

    def test_empty_rejected(self):
        with pytest.raises(ConfigError, match="at least one"):
            PowerTrace(np.array([]), np.array([]), duration=1.0)


class TestCSVRoundTrip:
    def test_round_trip_preserves_samples(self):
        tr = PowerTrace(np.array([0.0, 0.5, 2.0]), np.array([1e-6, 0.0, 3.25e-6]),
                        duration=2.0, name="rt")
        buf = io.StringIO()
        save_trace(tr, buf)
        back = load_trace(io.StringIO(buf.getvalue()), name="rt")
        np.testing.assert_array_equal(back.times, tr.times)
        np.testing.assert_array_equal(back.powers, tr.powers)

    def test_header_enforced(self):
        with pytest.raises(TraceParseError, match="line 1"):
            load_trace(io.StringIO("time,power\n0,1\n"))

    def test_malformed_number_names_line(self):
        with pytest.raises(TraceParseError, match="line 3"):
            load_trace(io.StringIO("t,p\n0,1e-6\n0.1,oops\n"))

    def test_non_monotonic_names_line(self):
        with pytest.raises(TraceParseError, match="line 4"):
            load_trace(io.StringIO("t,p\n0,1\n1,1\n0.5,1\n"))

    def test_power_scale_applied(self):
        tr = load_trace(io.StringIO("t,p\n0,154\n"), power_column_scale=1e-6)
        assert tr.powers[0] == pytest.approx(154e-6)

    def test_file_path(self, tmp_path):
        p = tmp_path / "trace.csv"
        p.write_text("t,p\n0,1e-6\n1,2e-6\n")
        tr = load_trace(p)
        assert tr.duration == 1.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(TraceParseError, match="cannot read"):
            load_trace(tmp_path / "nope.csv")


class TestSynth:
    def test_constant(self):
        tr = synth_trace(ExcitationSpec("constant", p=1.2e-3), duration=2.0, dt=0.5)
        assert np.all(tr.powers == 1.2e-3)
        assert trace_energy(tr) == pytest.approx(1.2e-3 * 2.0)

    def test_burst_duty_cycle(self):
        spec = ExcitationSpec("burst", p_on=154e-6, t_on=0.6, t_off=34.4, cycles=1)
        tr = synth_trace(spec, duration=35.0, dt=1e-3)
        # on for exactly 0.6 s out of 35
        assert trace_energy(tr) == pytest.approx(154e-6 * 0.6, rel=1e-12)
        assert power_at(tr, 0.3) == 154e-6
        assert power_at(tr, 0.7) == 0.0

    def test_two_burst_geometry(self):
        spec = ExcitationSpec("two_burst", p_peak=58e-6, burst_width=13.0,
                              gap=4.0, lead=1.0, baseline=9e-6)
        tr = synth_trace(spec, duration=40.0, dt=1e-3)
        assert power_at(tr, 0.5) == 9e-6      # lead-in
        assert power_at(tr, 7.0) == 58e-6     # burst 1: [1, 14)
        assert power_at(tr, 15.0) == 9e-6     # gap: [14, 18)
        assert power_at(tr, 20.0) == 58e-6    # burst 2: [18, 31)
        assert power_at(tr, 35.0) == 9e-6
        expect = 9e-6 * (40.0 - 26.0) + 58e-6 * 26.0
        assert trace_energy(tr) == pytest.approx(expect, rel=1e-9)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError, match="unknown excitation"):
            ExcitationSpec("sine")


class TestHoldQueries:
    def _trace(self):
        return PowerTrace(np.array([0.0, 1.0, 3.0]), np.array([2.0, 5.0, 1.0]),
                          duration=10.0)

    def test_hold_between_samples(self):
        tr = self._trace()
        assert power_at(tr, 0.0) == 2.0
        assert power_at(tr, 0.999) == 2.0
        assert power_at(tr, 1.0) == 5.0
        assert power_at(tr, 2.999) == 5.0

    def test_hold_past_last_sample(self):
        assert power_at(self._trace(), 9.5) == 1.0

    def test_domain_enforced(self):
        tr = self._trace()
        with pytest.raises(DomainError):
            power_at(tr, -0.1)
        with pytest.raises(DomainError):
            power_at(tr, 10.1)

    def test_energy_exact_for_hold(self):
        # 2 W for 1 s + 5 W for 2 s + 1 W for 7 s
        assert trace_energy(self._trace()) == pytest.approx(2 + 10 + 7)

    def test_average_power_window(self):
        # window [0.5, 1.5]: half a second at 2, half at 5
        assert average_power(self._trace(), 0.5, 1.5) == pytest.approx(3.5)


@given(
    powers=st.lists(st.floats(0, 1e-3, allow_nan=False), min_size=1, max_size=8),
    split=st.floats(0.1, 0.9),
)
def test_energy_additive_over_split(powers, split):
    """E[0,t] + E[t,end] == E[0,end] for any split point."""
    t = np.arange(len(powers), dtype=float)
    tr = PowerTrace(t, np.array(powers), duration=float(len(powers)))
    mid = split * tr.duration
    total = trace_energy(tr)
    parts = trace_energy(tr, 0.0, mid) + trace_energy(tr, mid, tr.duration)
    assert parts == pytest.approx(total, rel=1e-9, abs=1e-18)
