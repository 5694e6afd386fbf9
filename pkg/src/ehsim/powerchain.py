"""Storage capacitor and regulator models.

All state lives in the energy domain: the simulator integrates E directly and
derives the capacitor voltage as v = sqrt(2E/C) only when a voltage is needed
(threshold checks, waveform output).  This keeps constant-power charging exact
regardless of step size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class Storage:
    """Capacitor bank on the harvester output.

    capacitance: farads
    v_max:       clamp voltage; harvested energy above it is discarded
    r_leak:      parallel leakage resistance in ohms (inf disables leakage)
    v0:          initial voltage at t=0
    """

    capacitance: float
    v_max: float
    r_leak: float = math.inf
    v0: float = 0.0

    def __post_init__(self):
        if self.capacitance <= 0:
            raise ConfigError(f"capacitance must be > 0, got {self.capacitance}")
        if self.v_max <= 0:
            raise ConfigError(f"v_max must be > 0, got {self.v_max}")
        if self.r_leak <= 0:
            raise ConfigError(f"r_leak must be > 0, got {self.r_leak}")
        if not 0 <= self.v0 <= self.v_max:
            raise ConfigError(f"v0 must be within [0, v_max], got {self.v0}")

    @property
    def e_max(self) -> float:
        return stored_energy(self.capacitance, self.v_max)

    @property
    def e0(self) -> float:
        return stored_energy(self.capacitance, self.v0)


@dataclass(frozen=True)
class Regulator:
    """Buck/boost stage between the capacitor and the load rail.

    efficiency:  load-path conversion efficiency in (0, 1]
    p_quiescent: regulator self-draw in watts while enabled, taken cap-side
    """

    efficiency: float = 1.0
    p_quiescent: float = 0.0

    def __post_init__(self):
        if not 0 < self.efficiency <= 1:
            raise ConfigError(f"efficiency must be in (0, 1], got {self.efficiency}")
        if self.p_quiescent < 0:
            raise ConfigError(f"p_quiescent must be >= 0, got {self.p_quiescent}")


def stored_energy(capacitance: float, v: float) -> float:
    """Energy held by a capacitor at voltage v: C*v^2/2."""
    if capacitance <= 0:
        raise DomainError(f"capacitance must be > 0, got {capacitance}")
    if v < 0:
        raise DomainError(f"voltage must be >= 0, got {v}")
    return 0.5 * capacitance * v * v

def voltage_from_energy(capacitance: float, energy: float) -> float:
    """Inverse of stored_energy: v = sqrt(2E/C)."""
    if capacitance <= 0:
        raise DomainError(f"capacitance must be > 0, got {capacitance}")
    if energy < 0:
        raise DomainError(f"energy must be >= 0, got {energy}")
    return math.sqrt(2.0 * energy / capacitance)

def usable_energy(capacitance: float, v_hi: float, v_lo: float) -> float:
    """Energy extractable between two voltages: C*(v_hi^2 - v_lo^2)/2."""
    if v_hi < v_lo:
        raise DomainError(f"v_hi={v_hi} must be >= v_lo={v_lo}")
    return stored_energy(capacitance, v_hi) - stored_energy(capacitance, v_lo)


def charge_time_const_power(capacitance: float, v_lo: float, v_hi: float, p_in: float) -> float:
    """Seconds to charge from v_lo to v_hi at constant net input power."""
    if p_in <= 0:
        raise DomainError(f"p_in must be > 0, got {p_in}")
    return usable_energy(capacitance, v_hi, v_lo) / p_in


def regulator_draw(reg: Regulator, p_load: float) -> float:
    """Cap-side power drawn to deliver p_load at the rail: p/eta + quiescent."""
    if p_load < 0:
        raise DomainError(f"p_load must be >= 0, got {p_load}")
    return p_load / reg.efficiency + reg.p_quiescent
