"""Deterministic trace-driven simulator of vibration-powered, battery-free
sensor nodes: storage charging, power-management signaling, checkpointed
workload execution, and energy/outage reporting.
"""

from .controller import SolutionConfig, Thresholds, apc, pid, static_power, uvlo
from .engine import (
    RunResult,
    energy_audit,
    report_json,
    simulate,
    sweep,
    validate_scenario,
    waveform_csv,
)
from .errors import AuditError, ConfigError, DomainError, SimError, TraceParseError
from .kernel import IMPL as KERNEL_IMPL
from .powerchain import Regulator, Storage, stored_energy, usable_energy, voltage_from_energy
from .scenarios import builtin_names, get_builtin
from .sizing import apc_band, min_capacitance, recharge_time
from .trace import ExcitationSpec, PowerTrace, load_trace, save_trace, synth_trace
from .workload import (
    CheckpointPolicy,
    ImageStreamSpec,
    Op,
    Workload,
    beacon_workload,
    builtin_library,
    camera_stream_workload,
    sense_transmit_workload,
)

__version__ = "0.1.0"

__all__ = [
    "AuditError", "CheckpointPolicy", "ConfigError", "DomainError", "ExcitationSpec",
    "ImageStreamSpec", "KERNEL_IMPL", "Op", "PowerTrace", "Regulator", "RunResult",
    "SimError", "SolutionConfig", "Storage", "Thresholds", "TraceParseError", "Workload",
    "apc", "apc_band", "beacon_workload", "builtin_library", "builtin_names",
    "camera_stream_workload", "energy_audit", "get_builtin", "load_trace",
    "min_capacitance", "pid", "recharge_time", "report_json", "save_trace",
    "sense_transmit_workload", "simulate", "static_power", "stored_energy", "sweep",
    "synth_trace", "usable_energy", "uvlo", "validate_scenario", "voltage_from_energy",
    "waveform_csv",
]
