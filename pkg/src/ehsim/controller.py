"""Power-solution configuration: the four operating thresholds and how each
solution family observes them.

Three families share one interface:

  uvlo  two hardware thresholds only; start/good and sleep/close coincide
  pid   hardware start/close plus a comparator watching good/sleep
        continuously, at a fixed monitoring draw
  apc   hardware start/close plus software polling of good/sleep at fs,
        paying e_sample per ADC wake-up on top of a base monitoring draw

The stepping logic itself lives in the simulation kernel; this module holds
the validated configuration and the closed-form static power used for
design-time screening.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .powerchain import Regulator

UVLO = "uvlo"
PID = "pid"
APC = "apc"
KINDS = (UVLO, PID, APC)

# Comparator draw backed out of the measured static-power table: the polled
# variant's base (27.005 uW) and the comparator variant (28.0 uW total with a
# 5.0 uW regulator floor).
DEFAULT_APC_MONITOR = 27.005e-6
DEFAULT_PID_MONITOR = 23.0e-6
DEFAULT_SAMPLE_ENERGY = 1.29e-6

PHASES = ("ColdStart", "BuildUp", "TaskOperation", "Checkpoint", "Shutdown")
SIGNALS = ("PStart", "PGood", "PSleep", "PClose")


@dataclass(frozen=True)
class Thresholds:
    """The four operating voltages.

    Rising crossings of v_pstart/v_pgood arm the node; falling crossings of
    v_psleep/v_pclose wind it down.  Comparisons are >= on the way up and
    < on the way down.
    """

    v_pstart: float
    v_pgood: float
    v_psleep: float
    v_pclose: float

    def __post_init__(self):
        if min(self.v_pstart, self.v_pgood, self.v_psleep, self.v_pclose) <= 0:
            raise ConfigError("all thresholds must be > 0")
        if not self.v_pclose <= self.v_psleep <= self.v_pgood:
            raise ConfigError(
                f"need v_pclose <= v_psleep <= v_pgood, got "
                f"{self.v_pclose}/{self.v_psleep}/{self.v_pgood}"
            )
        if not self.v_pclose < self.v_pstart:
            raise ConfigError(
                f"need v_pclose < v_pstart, got {self.v_pclose}/{self.v_pstart}"
            )


@dataclass(frozen=True)
class SolutionConfig:
    """One power solution: kind, thresholds, and its monitoring cost model.

    monitor_power is drawn from the capacitor directly (not through the
    regulator).  The comparator solution pays it continuously; the polled
    solution pays it only while the regulator is up, plus e_sample per poll.
    """

    kind: str
    thresholds: Thresholds
    monitor_power: float = 0.0
    fs: float = 0.0         # polling rate, Hz (apc only)
    e_sample: float = 0.0   # joules per ADC wake-up (apc only)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown solution kind {self.kind!r}")
        if self.monitor_power < 0:
            raise ConfigError("monitor_power must be >= 0")
        if self.kind == APC:
            if self.fs <= 0:
                raise ConfigError("apc requires fs > 0")
            if self.e_sample < 0:
                raise ConfigError("apc requires e_sample >= 0")
        else:
            if self.fs or self.e_sample:
                raise ConfigError(f"fs/e_sample only apply to apc, not {self.kind}")
        if self.kind == UVLO:
            t = self.thresholds
            if t.v_pgood != t.v_pstart or t.v_psleep != t.v_pclose:
                raise ConfigError(
                    "uvlo exposes two thresholds: v_pgood must equal v_pstart "
                    "and v_psleep must equal v_pclose"
                )


def uvlo(v_on: float, v_off: float, monitor_power: float = 0.0) -> SolutionConfig:
    """Fixed two-threshold hysteresis; good/sleep degenerate onto on/off."""
    return SolutionConfig(
        UVLO, Thresholds(v_on, v_on, v_off, v_off), monitor_power=monitor_power
    )


def pid(
    v_pstart: float,
    v_pgood: float,
    v_psleep: float,
    v_pclose: float,
    monitor_power: float = DEFAULT_PID_MONITOR,
) -> SolutionConfig:
    return SolutionConfig(
        PID, Thresholds(v_pstart, v_pgood, v_psleep, v_pclose), monitor_power=monitor_power
    )


def apc(
    v_pstart: float,
    v_pgood: float,
    v_psleep: float,
    v_pclose: float,
    fs: float,
    e_sample: float = DEFAULT_SAMPLE_ENERGY,
    monitor_power: float = DEFAULT_APC_MONITOR,
) -> SolutionConfig:
    return SolutionConfig(
        APC,
        Thresholds(v_pstart, v_pgood, v_psleep, v_pclose),
        monitor_power=monitor_power,
        fs=fs,
        e_sample=e_sample,
    )


def static_power(config: SolutionConfig, reg: Regulator | None = None) -> float:
    """Steady-state overhead while regulated: fs*e_sample + monitoring + quiescent.

    Leakage is excluded here because it depends on the instantaneous voltage;
    the simulator accounts it per step.
    """
    p = config.fs * config.e_sample + config.monitor_power
    if reg is not None:
        p += reg.p_quiescent
    return p
