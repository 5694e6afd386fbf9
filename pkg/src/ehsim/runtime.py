"""Intermittent-execution bookkeeping: outage taxonomy, run counters, and the
receiver-side reassembly check for packetized payloads.

The per-tick reaction to the four operating signals (boot, restore, checkpoint,
shutdown) is fused into the stepping kernel for speed; this module defines the
shared vocabulary and the post-run analyses built on the kernel's event log.

Shutdown classification, in precedence order, evaluated when the close signal
arrives:

  startup_failure    nothing externally visible happened since this boot
                     (no marker completed, no loop iteration finished) and
                     there was still work to do
  mid_op_abort       a non-interruptible op was killed in flight
  missed_checkpoint  the workload checkpoints, and progress newer than the
                     last persisted record was lost (including a checkpoint
                     write itself killed mid-transaction)

Waits never abort: they are interruptible by design.
"""

from __future__ import annotations

from dataclasses import dataclass

STARTUP_FAILURE = "startup_failure"
MID_OP_ABORT = "mid_op_abort"
MISSED_CHECKPOINT = "missed_checkpoint"
OUTAGE_CAUSES = (STARTUP_FAILURE, MID_OP_ABORT, MISSED_CHECKPOINT)


@dataclass(frozen=True)
class Outage:
    t: float
    cause: str

    def __post_init__(self):
        if self.cause not in OUTAGE_CAUSES:
            raise ValueError(f"unknown outage cause {self.cause!r}")


@dataclass(frozen=True)
class Counters:
    """Monotone run counters; boots equals the PStart edge count."""

    boots: int = 0
    outages: int = 0
    checkpoints: int = 0
    restores: int = 0
    tasks_completed: int = 0
    packets_sent: int = 0


def reassemble(deliveries: list[tuple[float, int, int]]) -> dict:
    """Receiver model for packetized payloads.

    deliveries: (t, offset, length) per completed marker op carrying bytes,
    in completion order.  Returns coverage statistics; exactly-once delivery
    means unique_bytes equals the payload size with zero duplicated bytes.
    """
    covered: dict[int, int] = {}
    duplicated = 0
    for _t, off, length in deliveries:
        for b in range(off, off + length):
            if b in covered:
                duplicated += 1
            covered[b] = covered.get(b, 0) + 1
    gaps = 0
    if covered:
        hi = max(covered) + 1
        gaps = sum(1 for b in range(hi) if b not in covered)
    return {
        "unique_bytes": len(covered),
        "duplicated_bytes": duplicated,
        "gap_bytes_below_max": gaps,
        "deliveries": len(deliveries),
    }
