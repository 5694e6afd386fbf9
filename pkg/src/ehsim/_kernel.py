# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Fixed-step simulation kernel.

This file is plain Python that also compiles as a Cython extension (pure
Python mode).  The build, when a C compiler is present, produces _kernel.so
next to this file and the import machinery prefers it; otherwise this module
runs interpreted with identical semantics.  kernel.py reports which one is
active.

Per tick, in this fixed order:
  1. zero-order-hold trace lookup
  2. threshold signals (hardware start/close every tick; good/sleep per the
     solution kind: continuous for the comparator, polled for the sampler)
  3. signal reactions: boot, restore scheduling, checkpoint arming, shutdown
     classification
  4. workload progression: pick the next atomic op, assemble the load
  5. energy integration with exact outflow accounting (starvation scales all
     outflows to the available energy; surplus above the clamp is discarded)
  6. op completion bookkeeping (a starved tick makes no progress)

State is integrated in the energy domain; voltages appear only in recorded
waveform rows.  All threshold comparisons happen on precomputed energies.
"""

import cython

if cython.compiled:
    from cython.cimports.libc.math import sqrt
else:
    from math import sqrt

IS_COMPILED = cython.compiled

# cfg vector layout (engine fills this; keep in sync with engine._build_cfg)
CFG_DT = 0
CFG_CAP = 1
CFG_E0 = 2
CFG_EMAX = 3
CFG_KLEAK = 4          # 2/(C*r_leak), 0 when leakage is off
CFG_ETA_INV = 5
CFG_PQ = 6             # regulator quiescent draw while on
CFG_KIND = 7           # 0 uvlo, 1 pid, 2 apc
CFG_E_PSTART = 8       # thresholds as stored energies
CFG_E_PGOOD = 9
CFG_E_PSLEEP = 10
CFG_E_PCLOSE = 11
CFG_MONITOR = 12
CFG_FS = 13
CFG_ESAMPLE = 14
CFG_SLEEP = 15         # awake-idle rail draw
CFG_DEEP = 16          # deep-sleep rail draw
CFG_NVSTATIC = 17
CFG_CKPT_EN = 18
CFG_CKPT_EW = 19       # checkpoint write energy
CFG_CKPT_ER = 20       # checkpoint/restore read energy
CFG_CKPT_DUR = 21
CFG_PRELUDE = 22       # op row of the boot prelude, -1 for none
CFG_BODY_LO = 23
CFG_BODY_HI = 24
CFG_LOOP = 25
CFG_LEN = 26

# op table columns
OPC_ENERGY = 0
OPC_DURATION = 1
OPC_WAIT = 2
OPC_MARKER = 3

# solution kinds
K_UVLO = 0
K_PID = 1
K_APC = 2

# phases
PH_COLD = 0
PH_BUILD = 1
PH_TASK = 2
PH_CKPT = 3
PH_SHUT = 4

# event codes: (code, t, arg) tuples in the event log
EV_PSTART = 0
EV_PGOOD = 1
EV_PSLEEP = 2
EV_PCLOSE = 3
EV_OUTAGE = 4          # arg = outage cause code
EV_CKPT = 5            # arg = persisted next-op row
EV_RESTORE = 6         # arg = restored next-op row
EV_OP_DONE = 7         # arg = op row
EV_OP_ABORT = 8        # arg = op row

# outage cause codes
OUT_STARTUP = 0
OUT_MID_OP = 1
OUT_MISSED_CKPT = 2

# active-op kinds
ACT_NONE = 0
ACT_REAL = 1
ACT_WAIT = 2
ACT_CKPT = 3
ACT_RESTORE = 4

_EPS_T = 1e-9


def run(
    trace_t: cython.double[::1],
    trace_p: cython.double[::1],
    cfg: cython.double[::1],
    ops: cython.double[:, ::1],
    n_steps: cython.Py_ssize_t,
    stride: cython.Py_ssize_t,
    wave_t: cython.double[::1],
    wave_v: cython.double[::1],
    wave_phase: cython.double[::1],
    wave_load: cython.double[::1],
    op_energy: cython.double[::1],
    op_count: cython.double[::1],
    events: list,
) -> dict:
    # unpack config into locals; the loop below must not touch Python objects
    dt: cython.double = cfg[CFG_DT]
    cap: cython.double = cfg[CFG_CAP]
    e_max: cython.double = cfg[CFG_EMAX]
    k_leak: cython.double = cfg[CFG_KLEAK]
    eta_inv: cython.double = cfg[CFG_ETA_INV]
    p_q: cython.double = cfg[CFG_PQ]
    kind: cython.int = cython.cast(cython.int, cfg[CFG_KIND])
    e_pstart: cython.double = cfg[CFG_E_PSTART]
    e_pgood: cython.double = cfg[CFG_E_PGOOD]
    e_psleep: cython.double = cfg[CFG_E_PSLEEP]
    e_pclose: cython.double = cfg[CFG_E_PCLOSE]
    p_mon: cython.double = cfg[CFG_MONITOR]
    fs: cython.double = cfg[CFG_FS]
    e_sample: cython.double = cfg[CFG_ESAMPLE]
    p_sleep: cython.double = cfg[CFG_SLEEP]
    p_deep: cython.double = cfg[CFG_DEEP]
    p_nvs: cython.double = cfg[CFG_NVSTATIC]
    ckpt_en: cython.bint = cfg[CFG_CKPT_EN] != 0.0
    ckpt_ew: cython.double = cfg[CFG_CKPT_EW]
    ckpt_er: cython.double = cfg[CFG_CKPT_ER]
    ckpt_dur: cython.double = cfg[CFG_CKPT_DUR]
    prelude_row: cython.Py_ssize_t = cython.cast(cython.Py_ssize_t, cfg[CFG_PRELUDE])
    body_lo: cython.Py_ssize_t = cython.cast(cython.Py_ssize_t, cfg[CFG_BODY_LO])
    body_hi: cython.Py_ssize_t = cython.cast(cython.Py_ssize_t, cfg[CFG_BODY_HI])
    loop: cython.bint = cfg[CFG_LOOP] != 0.0
    inv_fs: cython.double = 1.0 / fs if fs > 0.0 else 0.0

    n_tr: cython.Py_ssize_t = trace_t.shape[0]
    tr_cur: cython.Py_ssize_t = 0

    # storage state
    E: cython.double = cfg[CFG_E0]

    # controller latches
    reg_on: cython.bint = False
    good: cython.bint = False
    phase: cython.int = PH_COLD
    next_sample: cython.double = 0.0
    armed_ok: cython.bint = False

    # workload state (volatile)
    next_row: cython.Py_ssize_t = body_lo
    iter_count: cython.Py_ssize_t = 0
    done: cython.bint = False
    started: cython.bint = False
    in_prelude: cython.bint = False
    pending_restore: cython.bint = False
    ckpt_pending: cython.bint = False

    # persisted checkpoint record
    p_valid: cython.bint = False
    p_next_row: cython.Py_ssize_t = 0
    p_iter: cython.Py_ssize_t = 0
    p_done: cython.bint = False
    ever_done: cython.bint = False

    # active op
    act_kind: cython.int = ACT_NONE
    act_row: cython.Py_ssize_t = -1
    act_e: cython.double = 0.0
    act_p: cython.double = 0.0
    act_left: cython.double = 0.0

    # counters
    boots: cython.Py_ssize_t = 0
    markers: cython.Py_ssize_t = 0
    total_iters: cython.Py_ssize_t = 0
    checkpoints: cython.Py_ssize_t = 0
    restores: cython.Py_ssize_t = 0
    n_out_startup: cython.Py_ssize_t = 0
    n_out_midop: cython.Py_ssize_t = 0
    n_out_missed: cython.Py_ssize_t = 0
    progress_at_boot: cython.Py_ssize_t = 0

    # energy buckets, capacitor side
    b_harvest: cython.double = 0.0
    b_ops: cython.double = 0.0
    b_sleep: cython.double = 0.0
    b_nv: cython.double = 0.0
    b_quiescent: cython.double = 0.0
    b_monitor: cython.double = 0.0
    b_leak: cython.double = 0.0
    b_discard: cython.double = 0.0
    # load-side tallies of completed work
    task_energy: cython.double = 0.0
    nv_energy: cython.double = 0.0

    i: cython.Py_ssize_t = 0
    row: cython.Py_ssize_t = 0
    t: cython.double = 0.0
    p_in: cython.double = 0.0
    sample_spend: cython.double = 0.0
    good_cond: cython.bint = False
    sleep_cond: cython.bint = False
    dirty: cython.bint = False
    boundary: cython.bint = False
    idle_p: cython.double = 0.0
    rail: cython.double = 0.0
    f: cython.double = 0.0
    dt_eff: cython.double = 0.0
    e_act: cython.double = 0.0
    e_idle: cython.double = 0.0
    e_nvs: cython.double = 0.0
    e_q: cython.double = 0.0
    e_mon: cython.double = 0.0
    e_leak: cython.double = 0.0
    inflow: cython.double = 0.0
    out_total: cython.double = 0.0
    avail: cython.double = 0.0
    s: cython.double = 0.0
    starved: cython.bint = False
    cause: cython.int = 0

    if E == 0.0:
        phase = PH_COLD
    # waveform row 0: initial state
    wave_t[0] = 0.0
    wave_v[0] = sqrt(2.0 * E / cap)
    wave_phase[0] = phase
    wave_load[0] = 0.0
    row = 1

    for i in range(n_steps):
        t = i * dt

        # --- 1. trace (zero-order hold) ---------------------------------
        while tr_cur + 1 < n_tr and trace_t[tr_cur + 1] <= t + _EPS_T:
            tr_cur += 1
        p_in = trace_p[tr_cur]

        # --- 2. + 3. signals and reactions ------------------------------
        sample_spend = 0.0
        if not reg_on:
            if E >= e_pstart:
                reg_on = True
                good = False
                phase = PH_BUILD
                boots += 1
                progress_at_boot = markers + total_iters
                pending_restore = p_valid
                started = False
                in_prelude = False
                armed_ok = False
                next_sample = t + inv_fs
                events.append((EV_PSTART, t, 0))
        if reg_on:
            if kind == K_APC:
                good_cond = False
                sleep_cond = False
                while inv_fs > 0.0 and t + _EPS_T >= next_sample:
                    sample_spend += e_sample
                    good_cond = E >= e_pgood
                    sleep_cond = E < e_psleep
                    armed_ok = E >= e_pgood
                    next_sample += inv_fs
            else:
                good_cond = E >= e_pgood
                sleep_cond = E < e_psleep
                armed_ok = E >= e_pgood
            if (not good) and good_cond:
                good = True
                phase = PH_TASK
                events.append((EV_PGOOD, t, 0))
            if good and sleep_cond:
                good = False
                phase = PH_CKPT
                ckpt_pending = True
                if act_kind == ACT_WAIT:
                    act_kind = ACT_NONE  # waits are interruptible, abort free
                events.append((EV_PSLEEP, t, 0))
            if E < e_pclose:
                # classify the shutdown before tearing volatile state down
                dirty = (not p_valid and (iter_count > 0 or next_row != body_lo or done)) or (
                    p_valid and (next_row != p_next_row or iter_count != p_iter or done != p_done)
                )
                cause = -1
                if markers + total_iters == progress_at_boot and not done:
                    cause = OUT_STARTUP
                elif act_kind == ACT_REAL:
                    cause = OUT_MID_OP
                elif ckpt_en and dirty:
                    cause = OUT_MISSED_CKPT
                if cause == OUT_STARTUP:
                    n_out_startup += 1
                elif cause == OUT_MID_OP:
                    n_out_midop += 1
                elif cause == OUT_MISSED_CKPT:
                    n_out_missed += 1
                if act_kind == ACT_REAL or act_kind == ACT_CKPT or act_kind == ACT_RESTORE:
                    events.append((EV_OP_ABORT, t, act_row))
                events.append((EV_PCLOSE, t, 0))
                if cause >= 0:
                    events.append((EV_OUTAGE, t, cause))
                reg_on = False
                good = False
                phase = PH_SHUT
                act_kind = ACT_NONE
                ckpt_pending = False
                pending_restore = False
                started = False
                in_prelude = False
                next_row = body_lo
                iter_count = 0
                done = False

        # --- 4. workload progression and load assembly ------------------
        if reg_on and act_kind == ACT_NONE:
            if ckpt_pending:
                dirty = (not p_valid and (iter_count > 0 or next_row != body_lo or done)) or (
                    p_valid and (next_row != p_next_row or iter_count != p_iter or done != p_done)
                )
                if ckpt_en and dirty:
                    act_kind = ACT_CKPT
                    act_row = -1
                    act_e = ckpt_ew
                    act_p = ckpt_ew / ckpt_dur
                    act_left = ckpt_dur
                else:
                    ckpt_pending = False
            elif phase == PH_TASK and not done:
                if pending_restore:
                    act_kind = ACT_RESTORE
                    act_row = -1
                    act_e = ckpt_er
                    act_p = ckpt_er / ckpt_dur
                    act_left = ckpt_dur
                    started = True  # a restored boot skips the prelude
                else:
                    if not started:
                        started = True
                        if prelude_row >= 0:
                            act_kind = ACT_REAL
                            act_row = prelude_row
                            act_e = ops[prelude_row, OPC_ENERGY]
                            act_p = act_e / ops[prelude_row, OPC_DURATION]
                            act_left = ops[prelude_row, OPC_DURATION]
                            in_prelude = True
                    if act_kind == ACT_NONE and next_row < body_hi:
                        boundary = next_row == body_lo
                        if (not boundary) or iter_count == 0 or armed_ok:
                            if ops[next_row, OPC_WAIT] != 0.0:
                                act_kind = ACT_WAIT
                                act_p = p_sleep
                                act_e = 0.0
                            else:
                                act_kind = ACT_REAL
                                act_e = ops[next_row, OPC_ENERGY]
                                act_p = act_e / ops[next_row, OPC_DURATION]
                            act_row = next_row
                            act_left = ops[next_row, OPC_DURATION]
                            if boundary:
                                # each iteration consumes the go-verdict; the
                                # polled solution must re-issue it at a sample
                                armed_ok = False

        if phase == PH_TASK:
            idle_p = p_sleep
        elif phase == PH_BUILD or phase == PH_CKPT:
            idle_p = p_deep
        else:
            idle_p = 0.0

        e_act = 0.0
        e_idle = 0.0
        e_nvs = 0.0
        e_q = 0.0
        e_mon = 0.0
        rail = 0.0
        dt_eff = 0.0
        if reg_on:
            if act_kind != ACT_NONE:
                dt_eff = act_left if act_left < dt else dt
                f = dt_eff / dt
                e_act = act_p * f * dt * eta_inv
                e_idle = idle_p * (1.0 - f) * dt * eta_inv
                rail = act_p * f + idle_p * (1.0 - f)
            else:
                e_idle = idle_p * dt * eta_inv
                rail = idle_p
            e_nvs = p_nvs * dt * eta_inv
            rail += p_nvs
            e_q = p_q * dt
            e_mon = p_mon * dt + sample_spend
        elif kind == K_PID:
            e_mon = p_mon * dt  # the comparator hangs off the capacitor directly

        # --- 5. integrate with exact outflow accounting -----------------
        e_leak = E * k_leak * dt
        inflow = p_in * dt
        out_total = e_act + e_idle + e_nvs + e_q + e_mon + e_leak
        avail = E + inflow
        starved = False
        if out_total > avail:
            s = avail / out_total if out_total > 0.0 else 0.0
            e_act *= s
            e_idle *= s
            e_nvs *= s
            e_q *= s
            e_mon *= s
            e_leak *= s
            E = 0.0
            starved = True
        else:
            E = avail - (e_act + e_idle + e_nvs + e_q + e_mon + e_leak)
            if E > e_max:
                b_discard += E - e_max
                E = e_max
        b_harvest += inflow
        if act_kind == ACT_REAL:
            b_ops += e_act
        elif act_kind == ACT_WAIT:
            b_sleep += e_act
        elif act_kind == ACT_CKPT or act_kind == ACT_RESTORE:
            b_nv += e_act
        b_sleep += e_idle
        b_nv += e_nvs
        b_quiescent += e_q
        b_monitor += e_mon
        b_leak += e_leak
        if E == 0.0 and phase == PH_SHUT:
            phase = PH_COLD

        # --- 6. op completion (a starved tick makes no progress) --------
        if act_kind != ACT_NONE and not starved:
            act_left -= dt_eff
            if act_left <= 1e-15:
                if act_kind == ACT_REAL:
                    task_energy += act_e
                    op_energy[act_row] += act_e
                    op_count[act_row] += 1.0
                    events.append((EV_OP_DONE, t, act_row))
                    if in_prelude:
                        in_prelude = False
                    else:
                        if ops[act_row, OPC_MARKER] != 0.0:
                            markers += 1
                        next_row += 1
                        if next_row == body_hi:
                            iter_count += 1
                            total_iters += 1
                            if loop:
                                next_row = body_lo
                            else:
                                done = True
                                ever_done = True
                elif act_kind == ACT_WAIT:
                    next_row += 1
                    if next_row == body_hi:
                        iter_count += 1
                        total_iters += 1
                        if loop:
                            next_row = body_lo
                        else:
                            done = True
                            ever_done = True
                elif act_kind == ACT_CKPT:
                    p_valid = True
                    p_next_row = next_row
                    p_iter = iter_count
                    p_done = done
                    checkpoints += 1
                    nv_energy += act_e
                    ckpt_pending = False
                    events.append((EV_CKPT, t, next_row))
                else:  # ACT_RESTORE
                    next_row = p_next_row
                    iter_count = p_iter
                    done = p_done
                    restores += 1
                    nv_energy += act_e
                    pending_restore = False
                    events.append((EV_RESTORE, t, next_row))
                act_kind = ACT_NONE
                act_row = -1

        # --- 7. waveform ------------------------------------------------
        if (i + 1) % stride == 0 or i == n_steps - 1:
            wave_t[row] = (i + 1) * dt
            wave_v[row] = sqrt(2.0 * E / cap)
            wave_phase[row] = phase
            wave_load[row] = rail
            row += 1

    return {
        "boots": boots,
        "checkpoints": checkpoints,
        "restores": restores,
        "tasks_completed": total_iters,
        "packets_sent": markers,
        "outage_startup_failure": n_out_startup,
        "outage_mid_op_abort": n_out_midop,
        "outage_missed_checkpoint": n_out_missed,
        "harvested": b_harvest,
        "load_ops": b_ops,
        "load_sleep": b_sleep,
        "load_nv": b_nv,
        "quiescent": b_quiescent,
        "monitoring": b_monitor,
        "leaked": b_leak,
        "discarded": b_discard,
        "task_energy": task_energy,
        "nv_energy": nv_energy,
        "e_final": E,
        "wave_rows": row,
        "workload_done": bool(ever_done),
    }
