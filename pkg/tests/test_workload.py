"""Op semantics, the task library, and the case-study workload builders."""

import pytest

from ehsim.errors import ConfigError
from ehsim.workload import (
    BLE_SLEEP_POWER,
    NV_READ_100B,
    NV_WRITE_100B,
    CheckpointPolicy,
    ImageStreamSpec,
    Op,
    Workload,
    apply_overrides,
    beacon_workload,
    builtin_library,
    camera_stream_workload,
    idle_workload,
    sense_transmit_workload,
    wait,
    workload_energy,
)


class TestOp:
    def test_wait_carries_no_energy(self):
        w = wait(0.38)
        assert w.wait and w.energy == 0.0 and w.duration == 0.38

    def test_wait_with_energy_rejected(self):
        with pytest.raises(ConfigError, match="waits carry no energy"):
            Op("w", 1e-6, 0.1, wait=True)

    def test_duration_positive(self):
        with pytest.raises(ConfigError, match="duration"):
            Op("x", 1e-6, 0.0)


class TestCheckpointPolicy:
    def test_costs_scale_with_record_size(self):
        pol = CheckpointPolicy(enabled=True, state_bytes=250)
        assert pol.write_energy == pytest.approx(2.5 * NV_WRITE_100B)
        assert pol.read_energy == pytest.approx(2.5 * NV_READ_100B)

    def test_one_byte_record(self):
        pol = CheckpointPolicy(enabled=True, state_bytes=1)
        assert pol.write_energy == pytest.approx(NV_WRITE_100B / 100.0)

    def test_enabled_needs_size(self):
        with pytest.raises(ConfigError):
            CheckpointPolicy(enabled=True, state_bytes=0)


class TestLibrary:
    def test_beacon_entries(self):
        lib = builtin_library()
        tx = lib["ble_beacon_tx"]
        assert tx.energy == pytest.approx(9.860e-6)
        assert tx.duration == pytest.approx(120e-3)
        assert tx.marker
        assert not lib["ble_beacon_init"].marker

    def test_radio_payloads(self):
        lib = builtin_library()
        assert lib["lora_tx_12B"].payload_bytes == 12
        assert lib["lora_tx_100B"].payload_bytes == 100

    def test_boot_preludes_present(self):
        lib = builtin_library()
        assert lib["init_uvlo"].energy == pytest.approx(50.8e-6)
        assert lib["init_pid"].energy == pytest.approx(50.9e-6)
        assert lib["init_apc"].energy == pytest.approx(51.09e-6)

    def test_overrides_patch_copy(self):
        lib = builtin_library()
        out = apply_overrides(lib, {"tds_sample": {"energy": 2e-3}})
        assert out["tds_sample"].energy == 2e-3
        assert lib["tds_sample"].energy == pytest.approx(1.46e-3)

    def test_override_unknown_op(self):
        with pytest.raises(ConfigError, match="unknown op"):
            apply_overrides(builtin_library(), {"nope": {"energy": 1.0}})

    def test_override_unknown_field(self):
        with pytest.raises(ConfigError, match="unknown fields"):
            apply_overrides(builtin_library(), {"tds_sample": {"power": 1.0}})


class TestBuilders:
    def test_beacon_is_single_shot(self):
        w = beacon_workload()
        assert not w.loop and w.prelude is None
        assert [op.name for op in w.body] == ["ble_beacon_init", "ble_beacon_tx"]
        assert w.sleep_power == w.deep_sleep_power == BLE_SLEEP_POWER
        # one full pass costs 18.877 uJ
        assert workload_energy(w) == pytest.approx(18.877e-6)

    def test_sense_transmit_loops(self):
        w = sense_transmit_workload("tds_sample", "lora_tx_12B")
        assert w.loop and w.prelude.name == "init_pid"
        assert workload_energy(w) == pytest.approx(50.9e-6 + 1.46e-3 + 22.4e-3)

    def test_sense_transmit_unknown_op(self):
        with pytest.raises(ConfigError, match="unknown library op"):
            sense_transmit_workload("sonar", "lora_tx_12B")

    def test_idle_workload_has_no_cost(self):
        assert workload_energy(idle_workload()) == 0.0

    def test_empty_body_rejected(self):
        with pytest.raises(ConfigError, match="body"):
            Workload("w", body=())


class TestImageStream:
    def test_geometry(self):
        spec = ImageStreamSpec()
        assert spec.image_bytes == 19602
        assert spec.packet_count == 82

    def test_packets_cover_image_exactly_once(self):
        w = camera_stream_workload()
        pkts = [op for op in w.body if op.name == "cam_packet"]
        assert len(pkts) == 82
        assert sum(op.payload_bytes for op in pkts) == 19602
        assert pkts[-1].payload_bytes == 19602 - 81 * 240  # 162-byte tail
        assert all(op.marker for op in pkts)

    def test_packet_energy_split(self):
        w = camera_stream_workload()
        pkts = [op for op in w.body if op.name == "cam_packet"]
        assert sum(op.energy for op in pkts) == pytest.approx(11.0e-3)
        assert w.body[0].energy == pytest.approx(16.0e-3)  # capture
        # capture + stream is the 27 mJ per-image budget
        assert workload_energy(w) - w.prelude.energy == pytest.approx(27.0e-3)

    def test_checkpointing_on_by_default(self):
        assert camera_stream_workload().checkpoint.enabled
