"""Harvested-power traces.

A trace is a zero-order-hold signal: each sample (t, p) holds until the next
sample time, and the last sample holds to the end of the trace (and beyond,
for queries past the nominal duration).  Traces are either loaded from CSV
recordings or synthesized from a small family of excitation shapes that stand
in for common vibration sources (steady shaker, fingertip presses, vehicle
passages on a bridge).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, TraceParseError

CSV_HEADER = ("t", "p")


@dataclass(frozen=True)
class PowerTrace:
    """Zero-order-hold harvested power signal.

    times:    sample instants in seconds, strictly increasing, first at 0.0
    powers:   harvested power in watts at each instant, >= 0
    duration: nominal length in seconds, >= the last sample time
    """

    times: np.ndarray
    powers: np.ndarray
    duration: float
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        p = np.asarray(self.powers, dtype=np.float64)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "powers", p)
        if t.ndim != 1 or p.ndim != 1 or len(t) != len(p):
            raise ConfigError("trace times and powers must be 1-D arrays of equal length")
        if len(t) == 0:
            raise ConfigError("trace must contain at least one sample")
        if t[0] != 0.0:
            raise ConfigError(f"first trace sample must be at t=0, got t={t[0]}")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise ConfigError("trace sample times must be strictly increasing")
        if np.any(p < 0):
            raise ConfigError("trace powers must be >= 0")
        if not np.isfinite(p).all() or not np.isfinite(t).all():
            raise ConfigError("trace samples must be finite")
        if self.duration < t[-1]:
            raise ConfigError(
                f"trace duration {self.duration} is shorter than last sample time {t[-1]}"
            )

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class ExcitationSpec:
    """Parametric excitation shape for synthesized traces.

    kind "constant":  p
    kind "burst":     p_on for t_on, then 0 for t_off, repeated `cycles` times
    kind "two_burst": baseline power with exactly two rectangular bursts of
                      p_peak, each burst_width long, separated by `gap`,
                      the first starting at `lead`
    """

    kind: str
    p: float = 0.0
    p_on: float = 0.0
    t_on: float = 0.0
    t_off: float = 0.0
    cycles: int = 1
    p_peak: float = 0.0
    burst_width: float = 0.0
    gap: float = 0.0
    baseline: float = 0.0
    lead: float = 0.0

    KINDS = ("constant", "burst", "two_burst")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ConfigError(f"unknown excitation kind {self.kind!r}")


def load_trace(path_or_file, power_column_scale: float = 1.0, name: str = "") -> PowerTrace:
    """Parse a `t,p` CSV into a PowerTrace.

    The header row must be exactly `t,p`.  `power_column_scale` converts the
    power column into watts (e.g. 1e-6 for a file recorded in microwatts).
    Malformed and out-of-order rows raise TraceParseError naming the line.
    """
    if hasattr(path_or_file, "read"):
        text = path_or_file.read()
        src = name or "<stream>"
    else:
        src = str(path_or_file)
        try:
            with open(path_or_file, "r", newline="") as fh:
                text = fh.read()
        except OSError as exc:
            raise TraceParseError(f"{src}: cannot read trace file: {exc}") from exc

    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise TraceParseError(f"{src}: empty trace file")
    header = tuple(cell.strip() for cell in rows[0])
    if header != CSV_HEADER:
        raise TraceParseError(f"{src}: expected header 't,p', got {','.join(header)!r} at line 1")

    times: list[float] = []
    powers: list[float] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise TraceParseError(f"{src}: expected 2 columns at line {lineno}, got {len(row)}")
        try:
            t = float(row[0])
            p = float(row[1]) * power_column_scale
        except ValueError as exc:
            raise TraceParseError(f"{src}: malformed number at line {lineno}: {exc}") from exc
        if times and t <= times[-1]:
            raise TraceParseError(f"{src}: non-monotonic time at line {lineno}")
        if p < 0:
            raise TraceParseError(f"{src}: negative power at line {lineno}")
        times.append(t)
        powers.append(p)

    if not times:
        raise TraceParseError(f"{src}: trace has no samples")
    if times[0] != 0.0:
        raise TraceParseError(f"{src}: first sample must be at t=0, got {times[0]} at line 2")
    try:
        return PowerTrace(np.array(times), np.array(powers), duration=times[-1], name=name or src)
    except ConfigError as exc:
        raise TraceParseError(f"{src}: {exc}") from exc


def save_trace(trace: PowerTrace, path_or_file) -> None:
    """Write a PowerTrace as a `t,p` CSV (watts), the inverse of load_trace."""
    def _write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for t, p in zip(trace.times, trace.powers):
            writer.writerow([repr(float(t)), repr(float(p))])

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _write(fh)


def synth_trace(spec: ExcitationSpec, duration: float, dt: float) -> PowerTrace:
    """Realize an ExcitationSpec as a uniformly sampled trace at step dt."""
    if duration <= 0 or dt <= 0:
        raise ConfigError("synth_trace requires duration > 0 and dt > 0")
    n = int(round(duration / dt))
    t = np.arange(n) * dt
    if spec.kind == "constant":
        p = np.full(n, float(spec.p))
    elif spec.kind == "burst":
        if spec.t_on < 0 or spec.t_off < 0 or spec.cycles < 1:
            raise ConfigError("burst requires t_on >= 0, t_off >= 0, cycles >= 1")
        p = np.zeros(n)
        period = spec.t_on + spec.t_off
        for k in range(spec.cycles):
            start = k * period
            p[(t >= start) & (t < start + spec.t_on)] = spec.p_on
    elif spec.kind == "two_burst":
        if spec.burst_width <= 0:
            raise ConfigError("two_burst requires burst_width > 0")
        p = np.full(n, float(spec.baseline))
        b1 = spec.lead
        b2 = spec.lead + spec.burst_width + spec.gap
        for start in (b1, b2):
            p[(t >= start) & (t < start + spec.burst_width)] = spec.p_peak
    else:  # pragma: no cover - guarded in ExcitationSpec
        raise ConfigError(f"unknown excitation kind {spec.kind!r}")
    return PowerTrace(t, p, duration=duration, name=spec.kind)


def power_at(trace: PowerTrace, t: float) -> float:
    """Harvested power at time t (zero-order hold).

    Queries past the last sample return the last sample's power; queries
    outside [0, duration] raise DomainError.
    """
    if t < 0 or t > trace.duration:
        raise DomainError(f"t={t} outside trace domain [0, {trace.duration}]")
    idx = int(np.searchsorted(trace.times, t, side="right")) - 1
    if idx < 0:
        idx = 0
    return float(trace.powers[idx])


def _segment_integral(trace: PowerTrace, t0: float, t1: float) -> float:
    """Exact integral of the hold signal over [t0, t1]."""
    t = trace.times
    p = trace.powers
    total = 0.0
    # Edges of the hold segments, clipped to the window.
    seg_start = np.concatenate([t, [max(trace.duration, t[-1], t1)]])
    for i in range(len(t)):
        a = max(float(seg_start[i]), t0)
        b = min(float(seg_start[i + 1]), t1)
        if b > a:
            total += float(p[i]) * (b - a)
    # Hold past the final sample if the window extends beyond it.
    if t1 > seg_start[-1]:
        total += float(p[-1]) * (t1 - float(seg_start[-1]))
    return total


def average_power(trace: PowerTrace, t0: float, t1: float) -> float:
    """Mean harvested power over the window [t0, t1] (exact for ZOH)."""
    if not (0 <= t0 < t1 <= trace.duration):
        raise DomainError(f"window [{t0}, {t1}] outside trace domain [0, {trace.duration}]")
    return _segment_integral(trace, t0, t1) / (t1 - t0)


def trace_energy(trace: PowerTrace, t0: float = 0.0, t1: float | None = None) -> float:
    """Total harvested energy over [t0, t1] in joules."""
    if t1 is None:
        t1 = trace.duration
    if not (0 <= t0 <= t1 <= trace.duration):
        raise DomainError(f"window [{t0}, {t1}] outside trace domain [0, {trace.duration}]")
    if t0 == t1:
        return 0.0
    return _segment_integral(trace, t0, t1)
