"""Command-line front end.

Subcommands mirror the library: buffon, circular {exact,mc,asymptotic},
linear {mc,asymptotic}, jensen, sweep, compare, polar-image.  Scenario
parameters come from a JSON file (--scenario) and/or inline flags, inline
winning on overlap.  Reports are JSON by default or CSV with --format csv;
--no-timing drops the wall-clock field so repeated runs are byte-identical.

Exit codes: 0 success, 1 validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Optional

from . import __version__
from .buffon import NeedleProblem, buffon_mc, buffon_probability
from .circular import (DEFAULT_RESOLUTION, asymptotic_summary, exact_probability,
                       mc_probability)
from .frames import TWO_PI, scan_circle_polar_approx, scan_circle_polar_exact
from .linear import asymptotic_summary_linear, mc_probability_linear
from .montecarlo import DEFAULT_SEED, EstimateWithCI
from .randomradius import (RadiusDistribution, asymptotic_probability_randomized,
                           jensen_sides)
from .scenario import (CircularPatrolScenario, ValidationError,
                       scenario_from_dict, scenario_to_dict)

DEFAULT_TRIALS = 100_000
LARGE_RATIO = 0.2

_CSV_HEADER = ("estimator", "probability", "ci_low", "ci_high",
               "m_min", "chord_l", "trials", "seed")
_SWEEP_HEADER = ("parameter", "value") + _CSV_HEADER


def _write_csv(header, rows) -> None:
    out = sys.stdout
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join("" if cell is None else str(cell) for cell in row) + "\n")


def _estimate_dict(est: EstimateWithCI) -> dict:
    return {
        "probability": est.mean,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "stderr": est.stderr,
        "successes": est.successes,
        "trials": est.trials,
    }


def _ratio_warnings(s) -> list[str]:
    if s.r / s.R > LARGE_RATIO:
        return [f"large-parameter regime: r/R = {s.r / s.R:.6g} exceeds "
                f"{LARGE_RATIO}; small-radius closed forms degrade"]
    return []


def _emit(args, command: str, scenario: Optional[dict], results: dict,
          t0: float, warnings: Optional[list[str]] = None,
          csv_rows: Optional[list[tuple]] = None) -> int:
    if args.format == "csv" and csv_rows is not None:
        _write_csv(_CSV_HEADER, csv_rows)
        return 0
    report = {"tool": "patrolgeom", "version": __version__, "command": command}
    if scenario is not None:
        report["scenario"] = scenario
    report["results"] = results
    if warnings:
        report["warnings"] = warnings
    if not args.no_timing:
        report["timing_seconds"] = time.perf_counter() - t0
    print(json.dumps(report, indent=2))
    return 0


def _scenario_from_args(args, kind: str):
    data: dict = {}
    path = getattr(args, "scenario", None)
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as err:
            raise ValidationError(f"cannot read scenario file: {err}")
        except json.JSONDecodeError as err:
            raise ValidationError(f"malformed scenario file: {err}")
        if not isinstance(raw, dict):
            raise ValidationError("scenario file must hold a JSON object")
        data.update(raw)
    for key in ("R", "r", "n", "v", "u"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    data.setdefault("kind", kind)
    if data.get("kind") != kind:
        raise ValidationError(f"{kind} scenario required, got kind "
                              f"'{data.get('kind')}'")
    return scenario_from_dict(data)


def _distribution_from_args(args) -> RadiusDistribution:
    if getattr(args, "atoms", None):
        try:
            atoms = json.loads(args.atoms)
        except json.JSONDecodeError as err:
            raise ValidationError(f"malformed --atoms JSON: {err}")
        return RadiusDistribution.from_atoms(atoms)
    path = getattr(args, "distribution", None)
    if not path:
        raise ValidationError("a radius distribution is required "
                              "(--distribution FILE or --atoms JSON)")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as err:
        raise ValidationError(f"cannot read distribution file: {err}")
    except json.JSONDecodeError as err:
        raise ValidationError(f"malformed distribution file: {err}")
    if not isinstance(raw, dict) or "atoms" not in raw:
        raise ValidationError("distribution file must hold an object "
                              "with an 'atoms' array")
    extra = sorted(set(raw) - {"atoms", "k_minus", "k_plus"})
    if extra:
        raise ValidationError(f"unknown distribution key(s): {', '.join(extra)}")
    return RadiusDistribution.from_atoms(raw["atoms"],
                                         k_minus=raw.get("k_minus"),
                                         k_plus=raw.get("k_plus"))


# ---- subcommand handlers ----

def _cmd_buffon(args) -> int:
    t0 = time.perf_counter()
    problem = NeedleProblem(l=args.l, L=args.L)
    analytic = buffon_probability(problem)
    est = buffon_mc(problem, args.trials, args.seed, args.workers)
    results = {"analytic": analytic, "mc": _estimate_dict(est)}
    rows = [("analytic", analytic, None, None, None, None, None, None),
            ("mc", est.mean, est.ci_low, est.ci_high, None, None,
             est.trials, args.seed)]
    return _emit(args, "buffon", {"kind": "needle", "l": args.l, "L": args.L},
                 results, t0, csv_rows=rows)


def _cmd_circular_exact(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "circular")
    p = exact_probability(scen, resolution=args.resolution)
    results = {"estimator": "exact", "probability": p,
               "resolution": args.resolution}
    rows = [("exact", p, None, None, None, None, None, None)]
    return _emit(args, "circular-exact", scenario_to_dict(scen), results, t0,
                 warnings=_ratio_warnings(scen), csv_rows=rows)


def _cmd_circular_mc(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "circular")
    est = mc_probability(scen, args.trials, args.seed, args.workers)
    results = {"estimator": "mc", "seed": args.seed, **_estimate_dict(est)}
    rows = [("mc", est.mean, est.ci_low, est.ci_high, None, None,
             est.trials, args.seed)]
    return _emit(args, "circular-mc", scenario_to_dict(scen), results, t0,
                 warnings=_ratio_warnings(scen), csv_rows=rows)


def _cmd_circular_asymptotic(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "circular")
    summary = asymptotic_summary(scen)
    results = {"estimator": "asymptotic", "probability": summary.p_asym,
               "chord_l": summary.chord_l, "m_min": summary.m_min}
    rows = [("asymptotic", summary.p_asym, None, None, summary.m_min,
             summary.chord_l, None, None)]
    return _emit(args, "circular-asymptotic", scenario_to_dict(scen), results,
                 t0, warnings=_ratio_warnings(scen), csv_rows=rows)


def _cmd_linear_mc(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "linear")
    est = mc_probability_linear(scen, args.trials, args.seed, args.workers)
    results = {"estimator": "mc", "seed": args.seed, **_estimate_dict(est)}
    rows = [("mc", est.mean, est.ci_low, est.ci_high, None, None,
             est.trials, args.seed)]
    return _emit(args, "linear-mc", scenario_to_dict(scen), results, t0,
                 csv_rows=rows)


def _cmd_linear_asymptotic(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "linear")
    summary = asymptotic_summary_linear(scen)
    results = {"estimator": "asymptotic", "probability": summary.p_asym,
               "chord_l": summary.chord_l, "m_min": summary.m_min}
    rows = [("asymptotic", summary.p_asym, None, None, summary.m_min,
             summary.chord_l, None, None)]
    return _emit(args, "linear-asymptotic", scenario_to_dict(scen), results,
                 t0, csv_rows=rows)


def _cmd_jensen(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "circular")
    dist = _distribution_from_args(args)
    lhs, rhs = jensen_sides(dist, scen.r, scen.R)
    fixed = asymptotic_summary(scen).p_asym
    randomized = asymptotic_probability_randomized(scen, dist)
    results = {"lhs": lhs, "rhs": rhs, "ratio": lhs / rhs,
               "mean_inverse_k": dist.mean_inverse(),
               "asymptotic_fixed": fixed,
               "asymptotic_randomized": randomized}
    if args.format == "csv":
        _write_csv(("quantity", "value"), sorted(results.items()))
        return 0
    return _emit(args, "jensen", scenario_to_dict(scen), results, t0,
                 warnings=_ratio_warnings(scen))


def _cmd_compare(args) -> int:
    t0 = time.perf_counter()
    scen = _scenario_from_args(args, "circular")
    exact = exact_probability(scen, resolution=args.resolution)
    est = mc_probability(scen, args.trials, args.seed, args.workers)
    summary = asymptotic_summary(scen)
    results = {
        "exact": {"probability": exact, "resolution": args.resolution},
        "mc": _estimate_dict(est),
        "asymptotic": {"probability": summary.p_asym,
                       "chord_l": summary.chord_l, "m_min": summary.m_min},
        "gap_exact_asymptotic": abs(exact - summary.p_asym),
        "exact_within_mc_ci": bool(est.ci_low <= exact <= est.ci_high),
    }
    rows = [("asymptotic", summary.p_asym, None, None, summary.m_min,
             summary.chord_l, None, None),
            ("exact", exact, None, None, None, None, None, None),
            ("mc", est.mean, est.ci_low, est.ci_high, None, None,
             est.trials, args.seed)]
    return _emit(args, "compare", scenario_to_dict(scen), results, t0,
                 warnings=_ratio_warnings(scen), csv_rows=rows)


_SWEEPABLE = ("R", "r", "n", "v", "u")
_ESTIMATORS = ("asymptotic", "exact", "mc")


def _sweep_values(args) -> list[float]:
    if args.values is not None:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip() != ""]
        except ValueError:
            raise ValidationError("--values must be a comma-separated "
                                  "list of numbers")
        if not values:
            raise ValidationError("--values must contain at least one number")
        return values
    if args.start is None or args.stop is None or args.steps is None:
        raise ValidationError("sweep needs --values or all of "
                              "--start/--stop/--steps")
    if args.steps < 1:
        raise ValidationError("--steps must be >= 1")
    if args.steps == 1:
        return [args.start]
    if args.log:
        if args.start <= 0 or args.stop <= 0:
            raise ValidationError("log grids need positive --start/--stop")
        ratio = (args.stop / args.start) ** (1.0 / (args.steps - 1))
        return [args.start * ratio ** i for i in range(args.steps)]
    step = (args.stop - args.start) / (args.steps - 1)
    return [args.start + step * i for i in range(args.steps)]


def _cmd_sweep(args) -> int:
    estimators = [e.strip() for e in args.estimators.split(",") if e.strip()]
    if not estimators:
        raise _UsageError("--estimators must name at least one of "
                          + ", ".join(_ESTIMATORS))
    for e in estimators:
        if e not in _ESTIMATORS:
            raise _UsageError(f"unknown estimator '{e}' (choose from "
                              + ", ".join(_ESTIMATORS) + ")")
    estimators = sorted(set(estimators))

    base: dict = {}
    if args.scenario:
        try:
            with open(args.scenario, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as err:
            raise ValidationError(f"cannot read scenario file: {err}")
        except json.JSONDecodeError as err:
            raise ValidationError(f"malformed scenario file: {err}")
        if not isinstance(raw, dict):
            raise ValidationError("scenario file must hold a JSON object")
        base.update(raw)
    for key in ("R", "r", "n", "v", "u"):
        value = getattr(args, key, None)
        if value is not None:
            base[key] = value
    base.setdefault("kind", "circular")

    values = sorted(_sweep_values(args))
    param = args.parameter
    scenarios = []
    for value in values:
        if param == "n":
            if float(value) != int(value):
                raise ValidationError("swept n values must be integers")
            value = int(value)
        data = dict(base)
        data[param] = value
        scenarios.append((value, scenario_from_dict(data)))

    if "exact" in estimators:
        for _, scen in scenarios:
            if not isinstance(scen, CircularPatrolScenario):
                raise ValidationError("exact estimator requires a "
                                      "circular scenario")

    rows = []
    for value, scen in scenarios:
        circular = isinstance(scen, CircularPatrolScenario)
        for name in estimators:
            if name == "exact":
                p = exact_probability(scen, resolution=args.resolution)
                rows.append((param, value, "exact", p, None, None,
                             None, None, None, None))
            elif name == "asymptotic":
                summary = (asymptotic_summary(scen) if circular
                           else asymptotic_summary_linear(scen))
                rows.append((param, value, "asymptotic", summary.p_asym,
                             None, None, summary.m_min, summary.chord_l,
                             None, None))
            else:
                runner = mc_probability if circular else mc_probability_linear
                est = runner(scen, args.trials, args.seed, args.workers)
                rows.append((param, value, "mc", est.mean, est.ci_low,
                             est.ci_high, None, None, est.trials, args.seed))
    _write_csv(_SWEEP_HEADER, rows)
    return 0


def _cmd_polar_image(args) -> int:
    if args.points < 2:
        raise ValidationError("--points must be at least 2")
    project = scan_circle_polar_approx if args.approx else scan_circle_polar_exact
    rows = []
    for i in range(args.points):
        psi = TWO_PI * i / args.points
        point = project(args.r_over_R, psi)
        rows.append((psi, point.rho_norm, point.phi))
    _write_csv(("psi", "rho_norm", "phi"), rows)
    return 0


# ---- parser assembly ----

class _UsageError(Exception):
    pass


def _scenario_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--scenario", metavar="FILE",
                   help="JSON scenario file; inline flags override its fields")
    p.add_argument("--R", type=float, help="patrol radius / segment length")
    p.add_argument("--r", type=float, help="scan radius")
    p.add_argument("--n", type=int, help="number of vehicles")
    p.add_argument("--v", type=float, help="vehicle speed")
    p.add_argument("--u", type=float, help="intruder speed")
    return p


def _output_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="report format (default json)")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock timing for byte-identical reruns")
    return p


def _mc_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                   help=f"Monte Carlo trials (default {DEFAULT_TRIALS})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"root seed (default {DEFAULT_SEED})")
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads; never changes the result")
    return p


def _resolution_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION,
                   help=f"angular grid size for arc extraction "
                        f"(default {DEFAULT_RESOLUTION})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patrolgeom",
        description="Detection probability of a mobile intruder by a "
                    "patrolling sensor fleet.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    scen, out, mc = _scenario_parent(), _output_parent(), _mc_parent()

    p = sub.add_parser("buffon", parents=[out, mc],
                       help="short-needle crossing probability")
    p.add_argument("--l", type=float, required=True, help="needle length")
    p.add_argument("--L", type=float, required=True, help="line spacing")
    p.set_defaults(func=_cmd_buffon)

    circ = sub.add_parser("circular", help="circular patrol estimators")
    circ_sub = circ.add_subparsers(dest="mode", required=True)
    p = circ_sub.add_parser("exact", parents=[scen, out])
    _resolution_arg(p)
    p.set_defaults(func=_cmd_circular_exact)
    p = circ_sub.add_parser("mc", parents=[scen, out, mc])
    p.set_defaults(func=_cmd_circular_mc)
    p = circ_sub.add_parser("asymptotic", parents=[scen, out])
    p.set_defaults(func=_cmd_circular_asymptotic)

    lin = sub.add_parser("linear", help="segment patrol estimators")
    lin_sub = lin.add_subparsers(dest="mode", required=True)
    p = lin_sub.add_parser("mc", parents=[scen, out, mc])
    p.set_defaults(func=_cmd_linear_mc)
    p = lin_sub.add_parser("asymptotic", parents=[scen, out])
    p.set_defaults(func=_cmd_linear_asymptotic)

    p = sub.add_parser("jensen", parents=[scen, out],
                       help="randomized-radius convexity check")
    p.add_argument("--distribution", metavar="FILE",
                   help="JSON file with an 'atoms' array of [k, p] pairs")
    p.add_argument("--atoms", metavar="JSON",
                   help="inline JSON array of [k, p] pairs")
    p.set_defaults(func=_cmd_jensen)

    p = sub.add_parser("sweep", parents=[scen, mc],
                       help="parameter sweep, CSV on stdout")
    p.add_argument("--parameter", choices=_SWEEPABLE, required=True)
    p.add_argument("--values", help="comma-separated explicit values")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--log", action="store_true", help="logarithmic grid")
    p.add_argument("--estimators", default="asymptotic",
                   help="comma-separated subset of "
                        + ",".join(_ESTIMATORS))
    _resolution_arg(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("compare", parents=[scen, out, mc],
                       help="exact vs Monte Carlo vs asymptotic")
    _resolution_arg(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("polar-image",
                       help="polar image of a scan circle, CSV on stdout")
    p.add_argument("--r-over-R", dest="r_over_R", type=float, required=True)
    p.add_argument("--points", type=int, default=720)
    p.add_argument("--approx", action="store_true",
                   help="first-order image instead of the exact one")
    p.set_defaults(func=_cmd_polar_image)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        # covers ValidationError and bad numeric domains
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
