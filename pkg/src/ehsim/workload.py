"""Atomic operations, the built-in task energy library, and the case-study
workload programs.

An atomic operation is all-or-nothing: it draws energy/duration watts at the
load rail for its full duration, and aborting it mid-flight wastes whatever
it already spent.  Wait steps are the exception; they are interruptible idle
periods billed at the workload's sleep power and carry no work of their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError

# NV storage is charged per 100-byte record.
NV_WRITE_100B = 206.8e-6
NV_READ_100B = 205.7e-6
NV_STATIC_POWER = 29.7e-6

# Steps with no better source run this long; durations shape the waveform
# but every acceptance number is driven by the energies.
DEFAULT_OP_DURATION = 10e-3


@dataclass(frozen=True)
class Op:
    """One atomic step of a workload.

    energy   joules at the load rail (ignored for waits, which bill as sleep)
    marker   completing this op is externally visible progress (a packet on
             the air, a beacon heard); markers drive the outage classifier
    payload_bytes  bytes delivered to the receiver model on completion
    """

    name: str
    energy: float
    duration: float
    wait: bool = False
    marker: bool = False
    payload_bytes: int = 0

    def __post_init__(self):
        if self.duration <= 0:
            raise ConfigError(f"op {self.name!r}: duration must be > 0")
        if self.energy < 0:
            raise ConfigError(f"op {self.name!r}: energy must be >= 0")
        if self.payload_bytes < 0:
            raise ConfigError(f"op {self.name!r}: payload_bytes must be >= 0")
        if self.wait and self.energy != 0:
            raise ConfigError(f"op {self.name!r}: waits carry no energy of their own")


def wait(duration: float) -> Op:
    return Op("wait", 0.0, duration, wait=True)


@dataclass(frozen=True)
class CheckpointPolicy:
    """What gets persisted when the sleep signal arrives.

    state_bytes is the size of the progress record; read/write costs scale
    linearly from the per-100-byte rates.  duration is the NV transaction
    time, during which the write can still be killed by a close signal.
    """

    enabled: bool = False
    state_bytes: int = 100
    write_energy_per_100b: float = NV_WRITE_100B
    read_energy_per_100b: float = NV_READ_100B
    duration: float = DEFAULT_OP_DURATION

    def __post_init__(self):
        if self.enabled and self.state_bytes <= 0:
            raise ConfigError("checkpoint state_bytes must be > 0 when enabled")
        if self.duration <= 0:
            raise ConfigError("checkpoint duration must be > 0")

    @property
    def write_energy(self) -> float:
        return self.write_energy_per_100b * self.state_bytes / 100.0

    @property
    def read_energy(self) -> float:
        return self.read_energy_per_100b * self.state_bytes / 100.0


@dataclass(frozen=True)
class Workload:
    """A checkpointable program: optional one-time prelude, then a body that
    runs once or loops.

    Looped bodies re-arm between iterations: the next iteration starts only
    once the storage voltage is back at v_pgood (checked continuously or at
    polling instants, matching the power solution).

    sleep_power       load draw while awake but idle (and during waits)
    deep_sleep_power  load draw after a checkpoint and while building up
    nv_static_power   standby draw of the NV store while the regulator is on
    """

    name: str
    body: tuple[Op, ...]
    prelude: Op | None = None
    loop: bool = False
    sleep_power: float = 0.0
    deep_sleep_power: float = 0.0
    nv_static_power: float = 0.0
    checkpoint: CheckpointPolicy = field(default_factory=CheckpointPolicy)

    def __post_init__(self):
        if not self.body:
            raise ConfigError(f"workload {self.name!r}: body must not be empty")
        if self.sleep_power < 0 or self.deep_sleep_power < 0 or self.nv_static_power < 0:
            raise ConfigError(f"workload {self.name!r}: powers must be >= 0")

    def ops(self) -> tuple[Op, ...]:
        return ((self.prelude,) if self.prelude else ()) + self.body


def idle_workload(sleep_power: float = 0.0) -> Workload:
    """No work at all: a single zero-cost wait. Used for charge-curve runs."""
    return Workload("idle", body=(wait(1.0),), loop=True, sleep_power=sleep_power)


def workload_energy(program: Workload) -> float:
    """Sum of step energies for one full pass (prelude + body); waits are free."""
    return sum(op.energy for op in program.ops() if not op.wait)


@dataclass(frozen=True)
class ImageStreamSpec:
    """Fixed-geometry image split into equal-energy radio packets."""

    rows: int = 121
    cols: int = 162
    bytes_per_pixel: int = 1
    payload_bytes: int = 240
    capture_energy: float = 16.0e-3
    capture_duration: float = 200e-3
    tx_total_energy: float = 11.0e-3
    tx_total_duration: float = 4.0

    def __post_init__(self):
        if min(self.rows, self.cols, self.bytes_per_pixel, self.payload_bytes) <= 0:
            raise ConfigError("image geometry fields must be > 0")

    @property
    def image_bytes(self) -> int:
        return self.rows * self.cols * self.bytes_per_pixel

    @property
    def packet_count(self) -> int:
        return math.ceil(self.image_bytes / self.payload_bytes)


# ---------------------------------------------------------------------------
# Built-in task library
# ---------------------------------------------------------------------------

def builtin_library() -> dict[str, Op]:
    """Measured per-task energies for the supported peripherals.

    Durations marked here are the ones that shape published waveforms
    (radio on-air time, sensor conversion time); the rest default to 10 ms.
    """
    lib = [
        Op("init_uvlo", 50.8e-6, DEFAULT_OP_DURATION),
        Op("init_pid", 50.9e-6, DEFAULT_OP_DURATION),
        Op("init_apc", 51.09e-6, DEFAULT_OP_DURATION),
        # BLE beacon: one-time stack init plus a single advertising burst.
        Op("ble_beacon_init", 9.017e-6, DEFAULT_OP_DURATION),
        Op("ble_beacon_tx", 9.860e-6, 120e-3, marker=True),
        Op("ble_uart_tx", 1.15e-3, 250e-3, marker=True),
        Op("lora_tx_100B", 42.84e-3, 2.0, marker=True, payload_bytes=100),
        Op("lora_tx_12B", 22.4e-3, 2.0, marker=True, payload_bytes=12),
        Op("temp_onchip", 103.68e-6, DEFAULT_OP_DURATION),
        Op("temp_humidity", 673e-6, DEFAULT_OP_DURATION),
        Op("tds_sample", 1.46e-3, 300e-3),
        Op("barometric", 705.6e-6, DEFAULT_OP_DURATION),
        Op("accelerometer", 608.4e-6, DEFAULT_OP_DURATION),
        Op("camera_capture", 16.0e-3, 200e-3),
        Op("nv_read_100B", NV_READ_100B, DEFAULT_OP_DURATION),
        Op("nv_write_100B", NV_WRITE_100B, DEFAULT_OP_DURATION),
    ]
    return {op.name: op for op in lib}


# Static/sleep draws that go with the library entries, for scenario defaults.
BLE_SLEEP_POWER = 2.06e-6
BLE_UART_SLEEP_POWER = 6.6e-6
CAMERA_STANDBY_POWER = 200e-6


def apply_overrides(lib: dict[str, Op], overrides: dict[str, dict]) -> dict[str, Op]:
    """Scenario-file overrides: name -> {energy, duration, ...} patches."""
    out = dict(lib)
    for name, patch in overrides.items():
        if name not in out:
            raise ConfigError(f"library override for unknown op {name!r}")
        allowed = {"energy", "duration", "marker", "payload_bytes"}
        bad = set(patch) - allowed
        if bad:
            raise ConfigError(f"library override for {name!r}: unknown fields {sorted(bad)}")
        out[name] = replace(out[name], **patch)
    return out


# ---------------------------------------------------------------------------
# Case-study programs
# ---------------------------------------------------------------------------

def beacon_workload(lib: dict[str, Op] | None = None) -> Workload:
    """Single BLE advertising episode: init, one broadcast, done."""
    lib = lib or builtin_library()
    return Workload(
        "beacon",
        prelude=None,
        body=(lib["ble_beacon_init"], lib["ble_beacon_tx"]),
        loop=False,
        sleep_power=BLE_SLEEP_POWER,
        deep_sleep_power=BLE_SLEEP_POWER,
    )


def sense_transmit_workload(
    sensor: str,
    radio: str,
    lib: dict[str, Op] | None = None,
    init: str = "init_pid",
    sleep_power: float = 20e-3,
    deep_sleep_power: float = 2e-6,
) -> Workload:
    """Sample-then-transmit loop; stateless, so sleep retention is not needed.

    sleep_power is the awake-idle draw between the transmit and the sleep
    signal; deep_sleep_power is the retention-off draw while recharging.
    """
    lib = lib or builtin_library()
    for name in (sensor, radio, init):
        if name not in lib:
            raise ConfigError(f"unknown library op {name!r}")
    return Workload(
        f"sense+{radio}",
        prelude=lib[init],
        body=(lib[sensor], lib[radio]),
        loop=True,
        sleep_power=sleep_power,
        deep_sleep_power=deep_sleep_power,
    )


def camera_stream_workload(
    spec: ImageStreamSpec | None = None,
    lib: dict[str, Op] | None = None,
    loop: bool = False,
    sleep_power: float = CAMERA_STANDBY_POWER + BLE_UART_SLEEP_POWER,
    deep_sleep_power: float = 6.6e-6,
    checkpoint: CheckpointPolicy | None = None,
) -> Workload:
    """Capture one image, then stream it as fixed-size packets with per-packet
    progress markers so a checkpoint can resume mid-image.

    The capture op commits the raw frame to the camera buffer as part of its
    measured energy; checkpoints persist only the small progress record.
    """
    spec = spec or ImageStreamSpec()
    lib = lib or builtin_library()
    n = spec.packet_count
    e_pkt = spec.tx_total_energy / n
    d_pkt = spec.tx_total_duration / n
    body = [replace(lib["camera_capture"],
                    energy=spec.capture_energy, duration=spec.capture_duration)]
    remaining = spec.image_bytes
    for i in range(n):
        nbytes = min(spec.payload_bytes, remaining)
        remaining -= nbytes
        body.append(Op("cam_packet", e_pkt, d_pkt, marker=True, payload_bytes=nbytes))
    return Workload(
        "camera_stream",
        prelude=lib["init_apc"],
        body=tuple(body),
        loop=loop,
        sleep_power=sleep_power,
        deep_sleep_power=deep_sleep_power,
        nv_static_power=NV_STATIC_POWER,
        checkpoint=checkpoint or CheckpointPolicy(enabled=True, state_bytes=100),
    )
