"""Scenario execution.

A scenario is a plain JSON-able dict (schema below, SI units throughout).
This module validates it, compiles it into the flat arrays the kernel steps
over, runs the kernel, and assembles the report: counters, signal/outage
logs, per-cycle timings, the energy audit, and the decimated waveform.

simulate() is pure: the same scenario dict produces byte-identical report
JSON and waveform CSV.  sweep() runs independent copies with one field
changed, optionally across processes; result order follows input order.
"""

from __future__ import annotations

import concurrent.futures
import copy
import csv
import io
import json
import math
from dataclasses import dataclass, replace

import jsonschema
import numpy as np

from . import _kernel as K
from .controller import DEFAULT_APC_MONITOR, DEFAULT_PID_MONITOR, DEFAULT_SAMPLE_ENERGY, PHASES, SIGNALS, SolutionConfig, apc, pid, uvlo
from .errors import AuditError, ConfigError
from .powerchain import Regulator, Storage, stored_energy
from .runtime import OUTAGE_CAUSES, reassemble
from .trace import PowerTrace, load_trace
from .workload import CheckpointPolicy, Op, Workload, apply_overrides, builtin_library, wait

# Waveform rows the default stride aims for when the scenario does not pin one.
DEFAULT_MAX_WAVE_ROWS = 200_000

AUDIT_REL_TOL = 1e-3

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_BOOL = {"type": "boolean"}

_OP_ENTRY = {
    "type": "object",
    "properties": {
        "op": {"type": "string"},
        "name": {"type": "string"},
        "energy": _NONNEG,
        "duration": _POS,
        "marker": _BOOL,
        "payload_bytes": {"type": "integer", "minimum": 0},
        "wait": _POS,
        "repeat": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "seed": {"type": "integer"},  # reserved for future stochastic traces
        "sim": {
            "type": "object",
            "properties": {
                "duration": _POS,
                "dt": _POS,
                "stride": {"type": "integer", "minimum": 1},
            },
            "required": ["duration", "dt"],
            "additionalProperties": False,
        },
        "trace": {
            "type": "object",
            "properties": {
                "file": {"type": "string"},
                "power_scale": _POS,
                "kind": {"enum": ["constant", "burst", "two_burst"]},
                "p": _NONNEG,
                "p_on": _NONNEG,
                "t_on": _POS,
                "t_off": _NONNEG,
                "cycles": {"type": "integer", "minimum": 1},
                "p_peak": _NONNEG,
                "burst_width": _POS,
                "gap": _NONNEG,
                "baseline": _NONNEG,
                "lead": _NONNEG,
                "samples": {
                    "type": "object",
                    "properties": {
                        "t": {"type": "array", "items": _NUM, "minItems": 1},
                        "p": {"type": "array", "items": _NUM, "minItems": 1},
                    },
                    "required": ["t", "p"],
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
        "storage": {
            "type": "object",
            "properties": {
                "capacitance": _POS,
                "v_max": _POS,
                "r_leak": _POS,
                "v0": _NONNEG,
            },
            "required": ["capacitance", "v_max"],
            "additionalProperties": False,
        },
        "regulator": {
            "type": "object",
            "properties": {
                "efficiency": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                "p_quiescent": _NONNEG,
            },
            "additionalProperties": False,
        },
        "solution": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["uvlo", "pid", "apc"]},
                "v_pstart": _POS,
                "v_pgood": _POS,
                "v_psleep": _POS,
                "v_pclose": _POS,
                "monitor_power": _NONNEG,
                "fs": _POS,
                "e_sample": _NONNEG,
            },
            "required": ["kind", "v_pstart", "v_pclose"],
            "additionalProperties": False,
        },
        "workload": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "prelude": _OP_ENTRY,
                "body": {"type": "array", "items": _OP_ENTRY, "minItems": 1},
                "loop": _BOOL,
                "sleep_power": _NONNEG,
                "deep_sleep_power": _NONNEG,
                "nv_static_power": _NONNEG,
                "checkpoint": {
                    "type": "object",
                    "properties": {
                        "enabled": _BOOL,
                        "state_bytes": {"type": "integer", "minimum": 1},
                        "write_energy_per_100b": _NONNEG,
                        "read_energy_per_100b": _NONNEG,
                        "duration": _POS,
                    },
                    "additionalProperties": False,
                },
                "overrides": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "object",
                        "properties": {
                            "energy": _NONNEG,
                            "duration": _POS,
                            "marker": _BOOL,
                            "payload_bytes": {"type": "integer", "minimum": 0},
                        },
                        "additionalProperties": False,
                    },
                },
            },
            "required": ["body"],
            "additionalProperties": False,
        },
    },
    "required": ["sim", "trace", "storage", "solution", "workload"],
    "additionalProperties": False,
}

_VALIDATOR = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)


def validate_scenario(doc) -> list[str]:
    """Every violation as 'dotted.path: message'; empty list means runnable."""
    if not isinstance(doc, dict):
        return ["<root>: scenario must be a JSON object"]
    out = []
    for err in sorted(_VALIDATOR.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path]):
        path = ".".join(str(p) for p in err.absolute_path) or "<root>"
        out.append(f"{path}: {err.message}")
    if out:
        return out
    try:
        _compile(doc)
    except ConfigError as exc:
        out.append(str(exc))
    return out


def check_scenario(doc) -> None:
    problems = validate_scenario(doc)
    if problems:
        raise ConfigError("; ".join(problems))


# ---------------------------------------------------------------------------
# Scenario -> kernel inputs
# ---------------------------------------------------------------------------

@dataclass
class CompiledScenario:
    name: str
    dt: float
    duration: float
    n_steps: int
    stride: int
    trace_t: np.ndarray
    trace_p: np.ndarray
    cfg: np.ndarray
    ops: np.ndarray           # rows: energy, duration, wait, marker
    op_names: list
    payload_offset: list      # byte offset per op row, -1 when no payload
    payload_length: list
    storage: Storage
    regulator: Regulator
    solution: SolutionConfig
    workload: Workload


def _trace_edges(tr: dict, duration: float):
    """Exact hold-segment edges for the parametric excitation kinds."""
    kind = tr["kind"]
    edges: list[tuple[float, float]] = []
    if kind == "constant":
        edges = [(0.0, float(tr.get("p", 0.0)))]
    elif kind == "burst":
        t_on = float(tr.get("t_on", 0.0))
        t_off = float(tr.get("t_off", 0.0))
        cycles = int(tr.get("cycles", 1))
        p_on = float(tr.get("p_on", 0.0))
        if t_on <= 0:
            raise ConfigError("trace.t_on: burst requires t_on > 0")
        period = t_on + t_off
        for k in range(cycles):
            edges.append((k * period, p_on))
            if t_off > 0:
                edges.append((k * period + t_on, 0.0))
        if cycles * period < duration and t_off == 0:
            edges.append((cycles * period, 0.0))
    else:  # two_burst
        width = float(tr.get("burst_width", 0.0))
        gap = float(tr.get("gap", 0.0))
        lead = float(tr.get("lead", 0.0))
        peak = float(tr.get("p_peak", 0.0))
        base = float(tr.get("baseline", 0.0))
        if width <= 0:
            raise ConfigError("trace.burst_width: two_burst requires burst_width > 0")
        b2 = lead + width + gap
        edges = [
            (0.0, base),
            (lead, peak),
            (lead + width, base),
            (b2, peak),
            (b2 + width, base),
        ]
    # collapse coincident edges, keeping the later value
    out_t: list[float] = []
    out_p: list[float] = []
    for t, p in edges:
        if out_t and t == out_t[-1]:
            out_p[-1] = p
        elif out_t and t < out_t[-1]:
            raise ConfigError("trace: overlapping excitation segments")
        else:
            out_t.append(t)
            out_p.append(p)
    return np.array(out_t), np.array(out_p)


def _resolve_trace(doc: dict, duration: float):
    tr = doc["trace"]
    forms = [k for k in ("file", "kind", "samples") if k in tr]
    if len(forms) != 1:
        raise ConfigError("trace: exactly one of 'file', 'kind', or 'samples' is required")
    if "file" in tr:
        pt = load_trace(tr["file"], power_column_scale=tr.get("power_scale", 1.0))
        return np.asarray(pt.times), np.asarray(pt.powers)
    if "samples" in tr:
        t = np.asarray(tr["samples"]["t"], dtype=np.float64)
        p = np.asarray(tr["samples"]["p"], dtype=np.float64)
        pt = PowerTrace(t, p, duration=max(duration, float(t[-1])))  # validates
        return np.asarray(pt.times), np.asarray(pt.powers)
    t, p = _trace_edges(tr, duration)
    PowerTrace(t, p, duration=max(duration, float(t[-1])))  # validates
    return t, p


def _resolve_solution(doc: dict) -> SolutionConfig:
    sol = doc["solution"]
    kind = sol["kind"]

    def need(field):
        if field not in sol:
            raise ConfigError(f"solution.{field}: required for kind {kind!r}")
        return float(sol[field])

    def forbid(field):
        if field in sol:
            raise ConfigError(f"solution.{field}: not a {kind} parameter")

    try:
        if kind == "uvlo":
            for f in ("fs", "e_sample"):
                forbid(f)
            if "v_pgood" in sol and sol["v_pgood"] != sol["v_pstart"]:
                raise ConfigError("solution.v_pgood: uvlo has a single turn-on threshold")
            if "v_psleep" in sol and sol["v_psleep"] != sol["v_pclose"]:
                raise ConfigError("solution.v_psleep: uvlo has a single turn-off threshold")
            return uvlo(need("v_pstart"), need("v_pclose"),
                        monitor_power=float(sol.get("monitor_power", 0.0)))
        if kind == "pid":
            for f in ("fs", "e_sample"):
                forbid(f)
            return pid(need("v_pstart"), need("v_pgood"), need("v_psleep"), need("v_pclose"),
                       monitor_power=float(sol.get("monitor_power", DEFAULT_PID_MONITOR)))
        return apc(need("v_pstart"), need("v_pgood"), need("v_psleep"), need("v_pclose"),
                   fs=need("fs"),
                   e_sample=float(sol.get("e_sample", DEFAULT_SAMPLE_ENERGY)),
                   monitor_power=float(sol.get("monitor_power", DEFAULT_APC_MONITOR)))
    except ConfigError as exc:
        msg = str(exc)
        raise ConfigError(msg if msg.startswith("solution") else f"solution: {msg}") from exc


def _resolve_op(entry: dict, lib: dict, path: str) -> tuple[Op, int]:
    rep = int(entry.get("repeat", 1))
    if "wait" in entry:
        extra = set(entry) - {"wait", "repeat"}
        if extra:
            raise ConfigError(f"{path}: wait entries allow no other fields, got {sorted(extra)}")
        return wait(float(entry["wait"])), rep
    patch = {k: entry[k] for k in ("energy", "duration", "marker", "payload_bytes") if k in entry}
    if "op" in entry:
        if "name" in entry:
            raise ConfigError(f"{path}: give either 'op' (library ref) or 'name' (inline), not both")
        ref = entry["op"]
        if ref not in lib:
            raise ConfigError(f"{path}: unknown library op {ref!r}")
        return replace(lib[ref], **patch), rep
    if "name" in entry:
        if "energy" not in entry or "duration" not in entry:
            raise ConfigError(f"{path}: inline ops require energy and duration")
        return Op(entry["name"], float(entry["energy"]), float(entry["duration"]),
                  marker=bool(entry.get("marker", False)),
                  payload_bytes=int(entry.get("payload_bytes", 0))), rep
    raise ConfigError(f"{path}: op entry needs one of 'op', 'name', or 'wait'")


def _resolve_workload(doc: dict) -> Workload:
    wl = doc["workload"]
    lib = builtin_library()
    if "overrides" in wl:
        try:
            lib = apply_overrides(lib, wl["overrides"])
        except ConfigError as exc:
            raise ConfigError(f"workload.overrides: {exc}") from exc
    prelude = None
    if "prelude" in wl:
        op, rep = _resolve_op(wl["prelude"], lib, "workload.prelude")
        if rep != 1 or op.wait:
            raise ConfigError("workload.prelude: must be a single non-wait op")
        prelude = op
    body: list[Op] = []
    for i, entry in enumerate(wl["body"]):
        op, rep = _resolve_op(entry, lib, f"workload.body.{i}")
        body.extend([op] * rep)
    ck = wl.get("checkpoint", {})
    try:
        policy = CheckpointPolicy(
            enabled=bool(ck.get("enabled", False)),
            state_bytes=int(ck.get("state_bytes", 100)),
            write_energy_per_100b=float(ck.get("write_energy_per_100b", CheckpointPolicy.write_energy_per_100b)),
            read_energy_per_100b=float(ck.get("read_energy_per_100b", CheckpointPolicy.read_energy_per_100b)),
            duration=float(ck.get("duration", CheckpointPolicy.duration)),
        )
        return Workload(
            wl.get("name", doc.get("name", "workload")),
            body=tuple(body),
            prelude=prelude,
            loop=bool(wl.get("loop", False)),
            sleep_power=float(wl.get("sleep_power", 0.0)),
            deep_sleep_power=float(wl.get("deep_sleep_power", 0.0)),
            nv_static_power=float(wl.get("nv_static_power", 0.0)),
            checkpoint=policy,
        )
    except ConfigError as exc:
        raise ConfigError(f"workload: {exc}") from exc


def _compile(doc: dict) -> CompiledScenario:
    sim = doc["sim"]
    dt = float(sim["dt"])
    duration = float(sim["duration"])
    n_steps = int(round(duration / dt))
    if n_steps < 1:
        raise ConfigError("sim.duration: must cover at least one step of sim.dt")

    st = doc["storage"]
    try:
        storage = Storage(float(st["capacitance"]), float(st["v_max"]),
                          r_leak=float(st.get("r_leak", math.inf)),
                          v0=float(st.get("v0", 0.0)))
    except ConfigError as exc:
        raise ConfigError(f"storage: {exc}") from exc
    if storage.v0 > storage.v_max:
        raise ConfigError("storage.v0: exceeds v_max")

    rg = doc.get("regulator", {})
    regulator = Regulator(float(rg.get("efficiency", 1.0)), float(rg.get("p_quiescent", 0.0)))
    solution = _resolve_solution(doc)
    workload = _resolve_workload(doc)
    trace_t, trace_p = _resolve_trace(doc, duration)

    ops_list = list(workload.ops())
    prelude_idx = 0 if workload.prelude is not None else -1
    body_lo = 1 if workload.prelude is not None else 0
    ops = np.zeros((len(ops_list), 4))
    op_names = []
    payload_offset = []
    payload_length = []
    offset = 0
    for i, op in enumerate(ops_list):
        ops[i, K.OPC_ENERGY] = op.energy
        ops[i, K.OPC_DURATION] = op.duration
        ops[i, K.OPC_WAIT] = 1.0 if op.wait else 0.0
        ops[i, K.OPC_MARKER] = 1.0 if op.marker else 0.0
        op_names.append(op.name)
        if op.payload_bytes > 0 and i >= body_lo:
            payload_offset.append(offset)
            payload_length.append(op.payload_bytes)
            offset += op.payload_bytes
        else:
            payload_offset.append(-1)
            payload_length.append(0)

    thr = solution.thresholds
    cap = storage.capacitance
    cfg = np.zeros(K.CFG_LEN)
    cfg[K.CFG_DT] = dt
    cfg[K.CFG_CAP] = cap
    cfg[K.CFG_E0] = stored_energy(cap, storage.v0)
    cfg[K.CFG_EMAX] = stored_energy(cap, storage.v_max)
    cfg[K.CFG_KLEAK] = 0.0 if math.isinf(storage.r_leak) else 2.0 / (cap * storage.r_leak)
    cfg[K.CFG_ETA_INV] = 1.0 / regulator.efficiency
    cfg[K.CFG_PQ] = regulator.p_quiescent
    cfg[K.CFG_KIND] = {"uvlo": K.K_UVLO, "pid": K.K_PID, "apc": K.K_APC}[solution.kind]
    cfg[K.CFG_E_PSTART] = stored_energy(cap, thr.v_pstart)
    cfg[K.CFG_E_PGOOD] = stored_energy(cap, thr.v_pgood)
    cfg[K.CFG_E_PSLEEP] = stored_energy(cap, thr.v_psleep)
    cfg[K.CFG_E_PCLOSE] = stored_energy(cap, thr.v_pclose)
    cfg[K.CFG_MONITOR] = solution.monitor_power
    cfg[K.CFG_FS] = solution.fs
    cfg[K.CFG_ESAMPLE] = solution.e_sample
    cfg[K.CFG_SLEEP] = workload.sleep_power
    cfg[K.CFG_DEEP] = workload.deep_sleep_power
    cfg[K.CFG_NVSTATIC] = workload.nv_static_power
    cfg[K.CFG_CKPT_EN] = 1.0 if workload.checkpoint.enabled else 0.0
    cfg[K.CFG_CKPT_EW] = workload.checkpoint.write_energy
    cfg[K.CFG_CKPT_ER] = workload.checkpoint.read_energy
    cfg[K.CFG_CKPT_DUR] = workload.checkpoint.duration
    cfg[K.CFG_PRELUDE] = prelude_idx
    cfg[K.CFG_BODY_LO] = body_lo
    cfg[K.CFG_BODY_HI] = len(ops_list)
    cfg[K.CFG_LOOP] = 1.0 if workload.loop else 0.0

    stride = int(sim.get("stride", 0))
    if stride <= 0:
        stride = max(1, -(-n_steps // DEFAULT_MAX_WAVE_ROWS))

    return CompiledScenario(
        name=doc.get("name", "scenario"),
        dt=dt, duration=duration, n_steps=n_steps, stride=stride,
        trace_t=trace_t, trace_p=trace_p, cfg=cfg, ops=ops,
        op_names=op_names, payload_offset=payload_offset, payload_length=payload_length,
        storage=storage, regulator=regulator, solution=solution, workload=workload,
    )


# ---------------------------------------------------------------------------
# Running and report assembly
# ---------------------------------------------------------------------------

@dataclass
class RunResult:
    scenario: dict
    report: dict
    wave_t: np.ndarray
    wave_v: np.ndarray
    wave_phase: np.ndarray
    wave_load: np.ndarray
    events: list
    op_names: list
    impl: str


def simulate(doc: dict, stride: int | None = None, _impl_module=None) -> RunResult:
    check_scenario(doc)
    comp = _compile(doc)
    if stride is not None:
        if stride < 1:
            raise ConfigError("stride: must be >= 1")
        comp.stride = stride

    n_rows = 1 + comp.n_steps // comp.stride + (1 if comp.n_steps % comp.stride else 0)
    wave_t = np.zeros(n_rows)
    wave_v = np.zeros(n_rows)
    wave_phase = np.zeros(n_rows)
    wave_load = np.zeros(n_rows)
    op_energy = np.zeros(len(comp.op_names))
    op_count = np.zeros(len(comp.op_names))
    events: list = []

    mod = _impl_module if _impl_module is not None else K
    raw = mod.run(comp.trace_t, comp.trace_p, comp.cfg, comp.ops,
                  comp.n_steps, comp.stride,
                  wave_t, wave_v, wave_phase, wave_load,
                  op_energy, op_count, events)

    rows = raw["wave_rows"]
    report = _build_report(comp, raw, events, op_energy, op_count)
    return RunResult(
        scenario=doc,
        report=report,
        wave_t=wave_t[:rows], wave_v=wave_v[:rows],
        wave_phase=wave_phase[:rows], wave_load=wave_load[:rows],
        events=events,
        op_names=comp.op_names,
        impl="compiled" if getattr(mod, "IS_COMPILED", False) else "interpreted",
    )


def energy_audit(report: dict) -> float:
    """Conservation residual in joules; raises AuditError beyond tolerance."""
    audit = report["energy"]["audit"]
    residual = audit["residual"]
    harvested = audit["harvested"]
    bound = AUDIT_REL_TOL * harvested
    if abs(residual) > bound:
        raise AuditError(
            f"energy audit residual {residual!r} J exceeds {AUDIT_REL_TOL} of harvested",
            breakdown=audit,
        )
    return residual


def _build_report(comp: CompiledScenario, raw: dict, events: list,
                  op_energy: np.ndarray, op_count: np.ndarray) -> dict:
    e0 = float(comp.cfg[K.CFG_E0])
    delivered = raw["load_ops"] + raw["load_sleep"] + raw["load_nv"] + raw["quiescent"]
    d_e = raw["e_final"] - e0
    residual = raw["harvested"] - (d_e + delivered + raw["monitoring"] + raw["leaked"] + raw["discarded"])

    signals = [
        {"signal": SIGNALS[code], "t": t}
        for code, t, _arg in events
        if code in (K.EV_PSTART, K.EV_PGOOD, K.EV_PSLEEP, K.EV_PCLOSE)
    ]
    outage_events = [
        {"t": t, "cause": OUTAGE_CAUSES[arg]}
        for code, t, arg in events
        if code == K.EV_OUTAGE
    ]
    pstarts = [t for code, t, _ in events if code == K.EV_PSTART]
    pgoods = [t for code, t, _ in events if code == K.EV_PGOOD]

    # one cycle per PGood window; energy from op completions inside the window
    done_real = [(t, arg) for code, t, arg in events if code == K.EV_OP_DONE]
    cycles = []
    for i, g in enumerate(pgoods):
        end = pgoods[i + 1] if i + 1 < len(pgoods) else math.inf
        in_window = [arg for t, arg in done_real if g <= t < end]
        cycles.append({
            "index": i,
            "t_pgood": g,
            "period": (pgoods[i + 1] - g) if i + 1 < len(pgoods) else None,
            "ops_completed": len(in_window),
            "markers": int(sum(1 for r in in_window if comp.ops[r, K.OPC_MARKER] != 0.0)),
            "task_energy": float(sum(comp.ops[r, K.OPC_ENERGY] for r in in_window)),
        })

    by_op: dict[str, dict] = {}
    for i, name in enumerate(comp.op_names):
        if op_count[i] == 0:
            continue
        slot = by_op.setdefault(name, {"count": 0, "energy": 0.0})
        slot["count"] += int(op_count[i])
        slot["energy"] += float(op_energy[i])

    delivery = None
    if not comp.workload.loop and any(off >= 0 for off in comp.payload_offset):
        recs = [
            (t, comp.payload_offset[arg], comp.payload_length[arg])
            for code, t, arg in events
            if code == K.EV_OP_DONE and comp.payload_offset[arg] >= 0
        ]
        delivery = reassemble(recs)
        delivery["payload_bytes_total"] = int(sum(
            comp.payload_length[i] for i in range(len(comp.op_names))
            if comp.payload_offset[i] >= 0
        ))

    outages_total = (raw["outage_startup_failure"] + raw["outage_mid_op_abort"]
                     + raw["outage_missed_checkpoint"])
    report = {
        "name": comp.name,
        "sim": {
            "duration": comp.duration,
            "dt": comp.dt,
            "n_steps": comp.n_steps,
            "stride": comp.stride,
        },
        "cold_start_time": pstarts[0] if pstarts else None,
        "counters": {
            "boots": raw["boots"],
            "checkpoints": raw["checkpoints"],
            "restores": raw["restores"],
            "tasks_completed": raw["tasks_completed"],
            "packets_sent": raw["packets_sent"],
        },
        "outages": outages_total,
        "outages_by_cause": {
            "startup_failure": raw["outage_startup_failure"],
            "mid_op_abort": raw["outage_mid_op_abort"],
            "missed_checkpoint": raw["outage_missed_checkpoint"],
        },
        "outage_events": outage_events,
        "signals": signals,
        "cycles": cycles,
        "energy": {
            "audit": {
                "harvested": raw["harvested"],
                "delivered_to_load": delivered,
                "monitoring": raw["monitoring"],
                "leaked": raw["leaked"],
                "discarded": raw["discarded"],
                "stored_delta": d_e,
                "residual": residual,
            },
            "e_initial": e0,
            "e_final": raw["e_final"],
            "task_energy": raw["task_energy"],
            "nv_energy": raw["nv_energy"],
            "by_op": by_op,
        },
        "delivery": delivery,
        "workload_done": raw["workload_done"],
    }
    return report


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def set_param(doc: dict, path: str, value) -> dict:
    """Deep-copy doc with the dotted path (existing field) replaced."""
    out = copy.deepcopy(doc)
    parts = path.split(".")
    node = out
    for part in parts[:-1]:
        if isinstance(node, list):
            try:
                node = node[int(part)]
            except (ValueError, IndexError) as exc:
                raise ConfigError(f"sweep parameter {path!r}: bad index {part!r}") from exc
        elif isinstance(node, dict) and part in node:
            node = node[part]
        else:
            raise ConfigError(f"sweep parameter {path!r}: no field {part!r}")
    last = parts[-1]
    if isinstance(node, list):
        try:
            node[int(last)] = value
        except (ValueError, IndexError) as exc:
            raise ConfigError(f"sweep parameter {path!r}: bad index {last!r}") from exc
    elif isinstance(node, dict) and last in node:
        node[last] = value
    else:
        raise ConfigError(f"sweep parameter {path!r}: no field {last!r}")
    return out


def _sweep_one(args):
    doc, stride = args
    return simulate(doc, stride=stride)


def sweep(doc: dict, param: str, values, stride: int | None = None, jobs: int = 1) -> list[RunResult]:
    """One independent run per value, results in input order."""
    docs = []
    for v in values:
        d = set_param(doc, param, v)
        d["name"] = f"{doc.get('name', 'scenario')}[{param}={v:g}]"
        check_scenario(d)
        docs.append(d)
    if jobs <= 1 or len(docs) <= 1:
        return [simulate(d, stride=stride) for d in docs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_one, [(d, stride) for d in docs]))


# ---------------------------------------------------------------------------
# Deterministic serialization
# ---------------------------------------------------------------------------

def report_json(result: RunResult) -> str:
    return json.dumps(result.report, sort_keys=True, indent=2) + "\n"


def _event_label(code: int, arg: int, op_names: list) -> str:
    if code == K.EV_PSTART:
        return "PStart"
    if code == K.EV_PGOOD:
        return "PGood"
    if code == K.EV_PSLEEP:
        return "PSleep"
    if code == K.EV_PCLOSE:
        return "PClose"
    if code == K.EV_OUTAGE:
        return f"outage({OUTAGE_CAUSES[arg]})"
    if code == K.EV_CKPT:
        return "checkpoint"
    if code == K.EV_RESTORE:
        return "restore"
    if code == K.EV_OP_DONE:
        return f"op({op_names[arg]})"
    if code == K.EV_OP_ABORT:
        return f"abort({op_names[arg] if arg >= 0 else 'nv'})"
    return f"event{code}"


def waveform_csv(result: RunResult) -> str:
    """CSV with header t,v_storage,phase,load_power,event.

    Each event is attached to the first recorded row at or after its
    timestamp, so decimation never drops events.
    """
    labels = [""] * len(result.wave_t)
    for code, t, arg in result.events:
        idx = int(np.searchsorted(result.wave_t, t - 1e-12, side="left"))
        if idx >= len(labels):
            idx = len(labels) - 1
        tag = _event_label(code, arg, result.op_names)
        labels[idx] = tag if not labels[idx] else labels[idx] + ";" + tag
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "v_storage", "phase", "load_power", "event"])
    for i in range(len(result.wave_t)):
        writer.writerow([
            repr(float(result.wave_t[i])),
            repr(float(result.wave_v[i])),
            PHASES[int(result.wave_phase[i])],
            repr(float(result.wave_load[i])),
            labels[i],
        ])
    return buf.getvalue()


def sweep_csv(param: str, values, results: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        param, "cold_start_time", "boots", "outages",
        "startup_failure", "mid_op_abort", "missed_checkpoint",
        "checkpoints", "restores", "tasks_completed", "packets_sent", "task_energy",
    ])
    for v, res in zip(values, results):
        rep = res.report
        writer.writerow([
            repr(float(v)),
            "" if rep["cold_start_time"] is None else repr(float(rep["cold_start_time"])),
            rep["counters"]["boots"],
            rep["outages"],
            rep["outages_by_cause"]["startup_failure"],
            rep["outages_by_cause"]["mid_op_abort"],
            rep["outages_by_cause"]["missed_checkpoint"],
            rep["counters"]["checkpoints"],
            rep["counters"]["restores"],
            rep["counters"]["tasks_completed"],
            rep["counters"]["packets_sent"],
            repr(float(rep["energy"]["task_energy"])),
        ])
    return buf.getvalue()
