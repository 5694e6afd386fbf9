#!/usr/bin/env python3
"""Time the compiled stepping kernel against the pure-Python fallback.

Both run the same source (src/ehsim/_kernel.py); the compiled module is the
cythonized build of it, the fallback is the same file imported as plain
Python.  Reports per-run wall time, ticks/second, and the speedup.
"""

import argparse
import sys
import time

from ehsim import kernel
from ehsim.engine import simulate
from ehsim.scenarios import builtin_names, get_builtin


def best_of(doc, mod, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        simulate(doc, _impl_module=mod)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenarios", default="bridge-apc,cam",
                    help="comma list of builtins (default: bridge-apc,cam)")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    if kernel.IMPL != "compiled":
        print("warning: compiled kernel unavailable, comparing fallback to itself")
    interp = kernel.load_interpreted()

    names = [n.strip() for n in args.scenarios.split(",")]
    unknown = [n for n in names if n not in builtin_names()]
    if unknown:
        print(f"unknown scenario(s): {', '.join(unknown)}", file=sys.stderr)
        return 2

    print(f"{'scenario':12s} {'ticks':>9s} {'compiled':>12s} {'fallback':>12s} {'speedup':>8s}")
    for name in names:
        doc = get_builtin(name)
        ticks = round(doc["sim"]["duration"] / doc["sim"]["dt"])
        t_c = best_of(doc, None, args.repeats)
        t_i = best_of(doc, interp, max(1, args.repeats - 2))
        print(f"{name:12s} {ticks:9d} {t_c * 1e3:10.2f}ms {t_i * 1e3:10.2f}ms "
              f"{t_i / t_c:7.1f}x   ({ticks / t_c / 1e6:.1f} Mticks/s compiled)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
