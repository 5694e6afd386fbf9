"""Command line interface.

Subcommands:
  run       simulate one scenario (file or --builtin); --out writes
            report.json + waveform.csv, otherwise the report prints to stdout
  sweep     repeat a scenario with one field swept over a value list
  size      minimum storage capacitance for a task budget (and optionally the
            recharge time at a given capacitance and effective power)
  band      analytic feasibility screen of polling rates for the sampled
            monitor
  library   dump the built-in op table and scenario names
  validate  schema-check a scenario file and list every violation

Exit codes: 0 success, 2 configuration/schema error, 3 energy-audit failure,
1 internal error.  All output is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from . import engine, scenarios, sizing
from .errors import AuditError, ConfigError, DomainError, SimError, TraceParseError
from .workload import builtin_library


def _load_scenario(args) -> dict:
    if getattr(args, "builtin", None):
        if args.scenario is not None:
            raise ConfigError("give either a scenario file or --builtin, not both")
        return scenarios.get_builtin(args.builtin)
    if args.scenario is None:
        raise ConfigError("a scenario file or --builtin <name> is required")
    path = pathlib.Path(args.scenario)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read scenario file: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc


def _cmd_run(args) -> int:
    doc = _load_scenario(args)
    result = engine.simulate(doc, stride=args.stride)
    engine.energy_audit(result.report)
    if args.out:
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(engine.report_json(result))
        (out / "waveform.csv").write_text(engine.waveform_csv(result))
        rep = result.report
        print(f"{rep['name']}: boots={rep['counters']['boots']} outages={rep['outages']} "
              f"-> {out / 'report.json'}")
    else:
        sys.stdout.write(engine.report_json(result))
    return 0


def _cmd_sweep(args) -> int:
    doc = _load_scenario(args)
    values = [float(v) for v in args.values.split(",") if v.strip() != ""]
    if not values:
        raise ConfigError("--values: at least one numeric value is required")
    results = engine.sweep(doc, args.param, values, stride=args.stride, jobs=args.jobs)
    for res in results:
        engine.energy_audit(res.report)
    summary = engine.sweep_csv(args.param, values, results)
    if args.out:
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, res in enumerate(results):
            (out / f"report_{i:03d}.json").write_text(engine.report_json(res))
        (out / "sweep.csv").write_text(summary)
        print(f"swept {args.param} over {len(values)} values -> {out / 'sweep.csv'}")
    else:
        sys.stdout.write(summary)
    return 0


def _cmd_size(args) -> int:
    c_min = sizing.min_capacitance(args.e_task, args.static, args.eta,
                                   args.v_start, args.v_close)
    out = {"min_capacitance": c_min}
    if args.capacitance is not None or args.p_eff is not None:
        if args.capacitance is None or args.p_eff is None:
            raise ConfigError("recharge time needs both --capacitance and --p-eff")
        out["recharge_time"] = sizing.recharge_time(
            args.capacitance, args.v_close, args.v_start, args.p_eff)
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


def _cmd_band(args) -> int:
    fs_values = [float(v) for v in args.fs.split(",") if v.strip() != ""]
    if not fs_values:
        raise ConfigError("--fs: at least one polling rate is required")
    rows = sizing.apc_band(
        capacitance=args.capacitance,
        v_psleep=args.v_psleep,
        v_pclose=args.v_pclose,
        e_sample=args.e_sample,
        base_power=args.base_power,
        checkpoint_energy=args.checkpoint_energy,
        sustainable_harvest=args.harvest,
        max_dv_dt=args.max_dv_dt,
        fs_candidates=fs_values,
    )
    print(json.dumps(rows, sort_keys=True, indent=2))
    return 0


def _cmd_library(args) -> int:
    ops = {
        name: {
            "energy": op.energy,
            "duration": op.duration,
            "marker": op.marker,
            "payload_bytes": op.payload_bytes,
        }
        for name, op in builtin_library().items()
    }
    print(json.dumps({"ops": ops, "scenarios": scenarios.builtin_names()},
                     sort_keys=True, indent=2))
    return 0


def _cmd_validate(args) -> int:
    path = pathlib.Path(args.scenario)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    problems = engine.validate_scenario(doc)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 2
    print(f"{path}: valid")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehsim",
        description="Deterministic trace-driven simulator of intermittently "
                    "powered vibration-energy nodes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_args(p):
        p.add_argument("scenario", nargs="?", help="scenario JSON file")
        p.add_argument("--builtin", choices=scenarios.builtin_names(),
                       help="run a shipped scenario instead of a file")
        p.add_argument("--out", help="directory for output files")
        p.add_argument("--stride", type=int, help="waveform decimation stride")

    p_run = sub.add_parser("run", help="simulate one scenario")
    add_scenario_args(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="repeat a scenario over parameter values")
    add_scenario_args(p_sweep)
    p_sweep.add_argument("--param", required=True, help="dotted scenario path, e.g. solution.fs")
    p_sweep.add_argument("--values", required=True, help="comma-separated numeric values")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_size = sub.add_parser("size", help="minimum capacitance for a task budget")
    p_size.add_argument("--e-task", type=float, required=True, help="task energy per window, J")
    p_size.add_argument("--static", type=float, default=0.0, help="static energy per window, J")
    p_size.add_argument("--eta", type=float, default=1.0, help="regulator efficiency")
    p_size.add_argument("--v-start", type=float, required=True)
    p_size.add_argument("--v-close", type=float, required=True)
    p_size.add_argument("--capacitance", type=float, help="storage for recharge-time output, F")
    p_size.add_argument("--p-eff", type=float, help="effective charging power, W")
    p_size.set_defaults(func=_cmd_size)

    p_band = sub.add_parser("band", help="polling-rate feasibility screen")
    p_band.add_argument("--capacitance", type=float, required=True)
    p_band.add_argument("--v-psleep", type=float, required=True)
    p_band.add_argument("--v-pclose", type=float, required=True)
    p_band.add_argument("--e-sample", type=float, required=True, help="J per poll")
    p_band.add_argument("--base-power", type=float, required=True, help="monitor base draw, W")
    p_band.add_argument("--checkpoint-energy", type=float, required=True, help="J")
    p_band.add_argument("--harvest", type=float, required=True,
                        help="minimum sustainable harvested power, W")
    p_band.add_argument("--max-dv-dt", type=float, required=True,
                        help="fastest storage discharge slope, V/s")
    p_band.add_argument("--fs", required=True, help="comma-separated polling rates, Hz")
    p_band.set_defaults(func=_cmd_band)

    p_lib = sub.add_parser("library", help="dump the op table and builtin names")
    p_lib.set_defaults(func=_cmd_library)

    p_val = sub.add_parser("validate", help="schema-check a scenario file")
    p_val.add_argument("scenario", help="scenario JSON file")
    p_val.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, TraceParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AuditError as exc:
        print(f"audit failure: {exc}", file=sys.stderr)
        for key, val in sorted(exc.breakdown.items()):
            print(f"  {key}: {val!r}", file=sys.stderr)
        return 3
    except SimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # argparse exits on its own; this is the last net
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
