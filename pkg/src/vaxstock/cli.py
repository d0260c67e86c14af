"""Command-line front end: epsilon, fit, plan, simulate, sweep.

Human-readable summaries go to standard output; machine outputs (JSON or
CSV) go to explicit paths, each accompanied by a RunManifest that records
the resolved parameters needed to reproduce the file byte for byte.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .contour import epsilon_of_p, p_of_epsilon
from .demand import SigmoidParams, eval_sigmoid, fit_sigmoid, normalize, repair_monotonicity
from .errors import ConvergenceError, DataError
from .ingest import (
    DEFAULT_DATE_COLUMN,
    DEFAULT_LOCATION_COLUMN,
    DEFAULT_VALUE_COLUMN,
    load_csv,
    regularize,
)
from .manifest import SCHEMA_VERSION, build_manifest, dump_json, write_manifest
from .policy import Policy, PolicySpec, plan, purchase_quantity
from .simulate import SimulationConfig, estimate_probability, sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NO_CONVERGENCE = 4


def _emit_error(exc: BaseException) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _write_output(payload: dict, path, command: str, parameters: dict) -> None:
    dump_json(payload, path)
    write_manifest(build_manifest(command, parameters, __version__), path)


def _load_fit(path) -> tuple[SigmoidParams, float]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        params = SigmoidParams(**{k: doc["params"][k] for k in ("a", "b", "c", "d")})
        horizon = float(doc["horizon"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed fit file {path}: {exc}") from None
    return params, horizon


def _load_plan(path) -> Policy:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return Policy(
            n_deliveries=doc["n_deliveries"],
            total_demand=doc["total_demand"],
            epsilon=doc["epsilon"],
            initial_stock=doc["initial_stock"],
            lot=doc["lot"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed plan file {path}: {exc}") from None


def cmd_epsilon(args: argparse.Namespace) -> int:
    epsilon = epsilon_of_p(args.n, args.p)
    round_trip = p_of_epsilon(args.n, epsilon)
    print(
        f"n={args.n}  p={args.p:.6f}  epsilon={epsilon:.6f}"
        f"  round-trip P={round_trip:.6f}"
    )
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "n": args.n,
            "p": args.p,
            "epsilon": epsilon,
            "round_trip_p": round_trip,
        }
        parameters = {"n": args.n, "p": args.p, "json_out": str(args.json_out)}
        _write_output(payload, args.json_out, "epsilon", parameters)
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    raw = load_csv(
        args.csv,
        args.country,
        date_column=args.date_column,
        value_column=args.value_column,
        location_column=args.location_column,
    )
    daily = regularize(raw)
    repaired, corrected = repair_monotonicity(daily)
    series = normalize(repaired)
    report = fit_sigmoid(series)
    p = report.params
    print(
        f"{args.country}: a={p.a:.6f} b={p.b:.6f} c={p.c:.3f} d={p.d:.6f}"
        f"  rmse={report.rmse:.6f}  ({len(series)} days, {corrected} repaired)"
    )
    parameters = {
        "csv": str(args.csv),
        "country": args.country,
        "date_column": args.date_column,
        "value_column": args.value_column,
        "location_column": args.location_column,
        "json_out": str(args.json_out) if args.json_out else None,
        "emit_curve": str(args.emit_curve) if args.emit_curve else None,
    }
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "country": args.country,
            "horizon": series.horizon,
            "points": len(series),
            "corrected_points": corrected,
            "params": {"a": p.a, "b": p.b, "c": p.c, "d": p.d},
            "sse": report.sse,
            "rmse": report.rmse,
            "iterations": report.iterations,
        }
        _write_output(payload, args.json_out, "fit", parameters)
    if args.emit_curve:
        with open(args.emit_curve, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["day", "observed", "fitted"])
            for day, observed in zip(series.days, series.values):
                writer.writerow([day, repr(observed), repr(eval_sigmoid(p, day))])
        write_manifest(
            build_manifest("fit", parameters, __version__), args.emit_curve
        )
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    horizon = None
    if args.fit:
        _, horizon = _load_fit(args.fit)
    total_demand = args.demand * args.population
    spec = PolicySpec(args.n, args.p, total_demand, horizon)
    policy = plan(spec)
    schedule = [
        purchase_quantity(policy.n_deliveries, k, policy.initial_stock, policy.total_demand)
        for k in range(1, policy.n_deliveries + 1)
    ]
    print(
        f"n={policy.n_deliveries}  p={args.p:.6f}  D={policy.total_demand:g}"
        f"  epsilon={policy.epsilon:.6f}"
        f"  initial stock={policy.initial_stock:.6g}  lot={policy.lot:.6g}"
    )
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "n_deliveries": policy.n_deliveries,
            "target_probability": args.p,
            "total_demand": policy.total_demand,
            "horizon": horizon,
            "epsilon": policy.epsilon,
            "initial_stock": policy.initial_stock,
            "lot": policy.lot,
            "schedule": schedule,
        }
        parameters = {
            "n": args.n,
            "p": args.p,
            "demand": args.demand,
            "population": args.population,
            "fit": str(args.fit) if args.fit else None,
            "json_out": str(args.json_out),
        }
        _write_output(payload, args.json_out, "plan", parameters)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    policy = _load_plan(args.plan)
    params, horizon = _load_fit(args.fit)
    cfg = SimulationConfig(args.trials, args.seed, args.day_rounding)
    report = estimate_probability(policy, params, horizon, cfg)
    print(
        f"trials={report.trials}  non-shortage={report.non_shortage_count}"
        f"  probability={report.probability:.4f}"
        f"  std error={report.std_error:.4f}"
    )
    if args.json_out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "policy": {
                "n_deliveries": policy.n_deliveries,
                "total_demand": policy.total_demand,
                "epsilon": policy.epsilon,
                "initial_stock": policy.initial_stock,
                "lot": policy.lot,
            },
            "horizon": horizon,
            "trials": report.trials,
            "seed": cfg.seed,
            "day_rounding": cfg.day_rounding,
            "non_shortage_count": report.non_shortage_count,
            "probability": report.probability,
            "std_error": report.std_error,
        }
        parameters = {
            "plan": str(args.plan),
            "fit": str(args.fit),
            "trials": args.trials,
            "seed": args.seed,
            "day_rounding": args.day_rounding,
            "json_out": str(args.json_out),
        }
        _write_output(payload, args.json_out, "simulate", parameters)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    policy = _load_plan(args.plan)
    params, horizon = _load_fit(args.fit)
    cfg = SimulationConfig(args.trials, args.seed, args.day_rounding)
    rows = sweep(
        policy, params, horizon, cfg, (args.lot_low, args.lot_high, args.lot_step)
    )
    print(f"{'lot':>10}  {'probability':>11}  {'std error':>9}")
    for row in rows:
        print(f"{row.lot:>10.6f}  {row.probability:>11.4f}  {row.std_error:>9.4f}")
    if args.csv_out:
        with open(args.csv_out, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["lot", "probability", "std_error"])
            for row in rows:
                writer.writerow(
                    [repr(row.lot), repr(row.probability), repr(row.std_error)]
                )
        parameters = {
            "plan": str(args.plan),
            "fit": str(args.fit),
            "lot_low": args.lot_low,
            "lot_high": args.lot_high,
            "lot_step": args.lot_step,
            "trials": args.trials,
            "seed": args.seed,
            "day_rounding": args.day_rounding,
            "csv_out": str(args.csv_out),
        }
        write_manifest(
            build_manifest("sweep", parameters, __version__), args.csv_out
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vaxstock",
        description="Initial-stock sizing and Monte Carlo verification for"
        " single-wave vaccination campaigns.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eps = sub.add_parser(
        "epsilon", help="relative initial stock for a target probability"
    )
    p_eps.add_argument("--n", type=int, required=True, help="number of deliveries")
    p_eps.add_argument(
        "--p", type=float, required=True, help="target non-shortage probability"
    )
    p_eps.add_argument("--json-out", type=Path, default=None)
    p_eps.set_defaults(handler=cmd_epsilon)

    p_fit = sub.add_parser("fit", help="fit the sigmoid demand curve to a CSV series")
    p_fit.add_argument("--csv", type=Path, required=True, help="OWID-style CSV file")
    p_fit.add_argument("--country", required=True, help="location label to select")
    p_fit.add_argument("--date-column", default=DEFAULT_DATE_COLUMN)
    p_fit.add_argument("--value-column", default=DEFAULT_VALUE_COLUMN)
    p_fit.add_argument("--location-column", default=DEFAULT_LOCATION_COLUMN)
    p_fit.add_argument("--json-out", type=Path, default=None)
    p_fit.add_argument(
        "--emit-curve",
        type=Path,
        default=None,
        help="write day,observed,fitted CSV for plotting",
    )
    p_fit.set_defaults(handler=cmd_fit)

    p_plan = sub.add_parser("plan", help="size the initial stock and lot")
    p_plan.add_argument("--n", type=int, required=True, help="number of deliveries")
    p_plan.add_argument(
        "--p", type=float, required=True, help="target non-shortage probability"
    )
    p_plan.add_argument(
        "--demand",
        type=float,
        default=1.0,
        help="total demand as a fraction of the population (default 1.0)",
    )
    p_plan.add_argument(
        "--population",
        type=float,
        default=1.0,
        help="population scalar to express outputs in doses",
    )
    p_plan.add_argument(
        "--fit", type=Path, default=None, help="fit JSON supplying the horizon"
    )
    p_plan.add_argument("--json-out", type=Path, default=None)
    p_plan.set_defaults(handler=cmd_plan)

    p_sim = sub.add_parser("simulate", help="verify a plan by Monte Carlo")
    p_sim.add_argument("--plan", type=Path, required=True, help="plan JSON")
    p_sim.add_argument("--fit", type=Path, required=True, help="fit JSON")
    p_sim.add_argument("--trials", type=int, default=10_000)
    p_sim.add_argument("--seed", type=int, default=42)
    p_sim.add_argument("--day-rounding", action="store_true")
    p_sim.add_argument("--json-out", type=Path, default=None)
    p_sim.set_defaults(handler=cmd_simulate)

    p_sweep = sub.add_parser(
        "sweep", help="probability across a grid of lot sizes, shared scenarios"
    )
    p_sweep.add_argument("--plan", type=Path, required=True, help="plan JSON")
    p_sweep.add_argument("--fit", type=Path, required=True, help="fit JSON")
    p_sweep.add_argument("--lot-low", type=float, required=True)
    p_sweep.add_argument("--lot-high", type=float, required=True)
    p_sweep.add_argument("--lot-step", type=float, required=True)
    p_sweep.add_argument("--trials", type=int, default=10_000)
    p_sweep.add_argument("--seed", type=int, default=42)
    p_sweep.add_argument("--day-rounding", action="store_true")
    p_sweep.add_argument("--csv-out", type=Path, default=None)
    p_sweep.set_defaults(handler=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if not exc.code else int(exc.code)
    try:
        return args.handler(args)
    except ConvergenceError as exc:
        _emit_error(exc)
        return EXIT_NO_CONVERGENCE
    except DataError as exc:
        _emit_error(exc)
        return EXIT_DATA
    except OSError as exc:
        _emit_error(exc)
        return EXIT_DATA
    except ValueError as exc:
        _emit_error(exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
