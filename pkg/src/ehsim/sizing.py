"""Design-time calculators: minimum storage capacitance, inter-threshold
recharge time, and the feasible polling band for the sampled solution.

All are leakage-free closed forms meant for screening; the simulator is the
ground truth whenever they disagree.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .powerchain import usable_energy

OVERSAMPLED = "oversampled"
UNDERSAMPLED = "undersampled"
FEASIBLE = "feasible"


def min_capacitance(
    e_task: float,
    static_energy: float,
    eta: float,
    v_start: float,
    v_close: float,
) -> float:
    """Smallest capacitance that funds the task budget between the start and
    close thresholds: C >= 2*(static + task) / (eta*(v_start^2 - v_close^2)).

    static_energy is the monitoring/regulator overhead integrated over the
    window the caller cares about, as joules.
    """
    if v_close < 0 or v_start <= v_close:
        raise DomainError(f"need v_start > v_close >= 0, got {v_start}/{v_close}")
    if not 0 < eta <= 1:
        raise DomainError(f"eta must be in (0, 1], got {eta}")
    if e_task < 0 or static_energy < 0:
        raise DomainError("energies must be >= 0")
    return 2.0 * (static_energy + e_task) / (eta * (v_start**2 - v_close**2))


def recharge_time(capacitance: float, v_lo: float, v_hi: float, p_eff: float) -> float:
    """Seconds to charge between two voltages at constant effective power."""
    if p_eff <= 0:
        raise DomainError(f"p_eff must be > 0, got {p_eff}")
    if v_hi < v_lo:
        raise DomainError(f"need v_hi >= v_lo, got {v_hi}/{v_lo}")
    return usable_energy(capacitance, v_hi, v_lo) / p_eff


def apc_band(
    capacitance: float,
    v_psleep: float,
    v_pclose: float,
    e_sample: float,
    base_power: float,
    checkpoint_energy: float,
    sustainable_harvest: float,
    max_dv_dt: float,
    fs_candidates: list[float],
) -> list[dict]:
    """Analytic screen of polling rates.

    A rate is oversampled when its static draw (fs*e_sample + base) exceeds
    what the harvester can sustain, so the node can never accumulate energy.
    It is undersampled when the voltage can fall, within one polling period,
    from the sleep threshold past the checkpoint floor -- the voltage below
    which the remaining usable energy no longer covers the checkpoint write.
    Conservative on purpose: the simulator arbitrates the marginal cases.
    """
    if v_psleep < v_pclose:
        raise DomainError("need v_psleep >= v_pclose")
    v_floor = math.sqrt(v_pclose**2 + 2.0 * checkpoint_energy / capacitance)
    slack = v_psleep - v_floor
    out = []
    for fs in fs_candidates:
        if fs <= 0:
            raise DomainError(f"fs candidates must be > 0, got {fs}")
        if fs * e_sample + base_power > sustainable_harvest:
            verdict = OVERSAMPLED
        elif max_dv_dt / fs > slack:
            verdict = UNDERSAMPLED
        else:
            verdict = FEASIBLE
        out.append({
            "fs": fs,
            "verdict": verdict,
            "static_power": fs * e_sample + base_power,
            "v_ckpt_floor": v_floor,
        })
    return out
