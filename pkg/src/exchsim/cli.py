"""Command-line front end: feasibility reports, gate analysis, Monte Carlo runs.

Subcommands: feasibility, gate, mc, sweep, catalog.  Verdicts are data, not
exit codes: 0 means the analysis completed (feasible or not), 2 means bad
input, 1 an internal failure.  Commands that emit data files write a
manifest alongside them; with a fixed seed the primary output files are
byte-identical across runs and worker counts.
"""

import argparse
import csv
import json
import math
import os
import sys
import time
import traceback

from . import __version__, budget, montecarlo
from .dephasing import DephasingSpec
from .gates import (
    gate_error_vs_phase,
    pulse_for_target,
    relative_error_to_phase_error,
    relative_error_to_phase_error_first_order,
    swap_power_target,
)
from .montecarlo import McConfig, SWEEP_AXES
from .noise import ControlNoiseSpec, DISTRIBUTIONS, RejectedSampleError

CATALOG_ENV_VAR = "EXCHSIM_CATALOG"
DEFAULT_EPSILON = 1e-5
DEFAULT_OUT_DIR = "exchsim_out"


def _fmt(x):
    """Scientific notation with full double precision, for stable file output."""
    return f"{float(x):.17e}"


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)  # 'inf', '-inf', 'nan'
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_manifest(out_dir, command, parameters, seed, outputs, started):
    path = os.path.join(out_dir, f"{command}_manifest.json")
    _write_json(
        path,
        {
            "command": command,
            "version": __version__,
            "seed": seed,
            "parameters": parameters,
            "outputs": sorted(outputs),
            "duration_seconds": time.monotonic() - started,
        },
    )
    return path


def _load_spec_file(path):
    with open(path) as fh:
        return budget.load_specs(fh.read())


def _user_technologies(file_arg):
    """Technologies from the env-var catalog plus an optional --file."""
    entries = []
    env_path = os.environ.get(CATALOG_ENV_VAR)
    if env_path:
        entries.extend(_load_spec_file(env_path).technologies)
    if file_arg:
        entries.extend(_load_spec_file(file_arg).technologies)
    return entries


def _matrix_lines(u):
    lines = []
    for row in u:
        lines.append("  " + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
    return lines


# ---------------------------------------------------------------------------
# feasibility


def _resolve_platform(args, loaded):
    if args.t2 is not None or args.sensitivity is not None:
        if args.t2 is None or args.sensitivity is None:
            raise ValueError("--t2 and --sensitivity must be given together")
        return budget.PlatformSpec(t2_s=args.t2, sensitivity=args.sensitivity), "custom"
    if args.platform is not None:
        platforms = budget.builtin_platforms()
        if args.platform not in platforms:
            raise ValueError(
                f"unknown platform {args.platform!r}; builtins: {sorted(platforms)}"
            )
        return platforms[args.platform], args.platform
    if loaded is not None and loaded.platform is not None:
        return loaded.platform, "spec-file"
    return budget.SI_SPIN, "si-spin"  # default platform, echoed in the report


def _resolve_technology(args, loaded):
    if args.sigma_a is not None or args.sigma_t is not None:
        if args.sigma_a is None or args.sigma_t is None:
            raise ValueError("--sigma-a and --sigma-t must be given together")
        return budget.TechnologySpec(
            name="custom",
            sigma_a=args.sigma_a,
            sigma_t_s=args.sigma_t,
            bw_low_hz=args.bw_low,
            bw_high_hz=args.bw_high,
        )
    file_techs = loaded.technologies if loaded is not None else ()
    if args.tech is not None:
        catalog = budget.merge_catalog(list(_user_technologies(None)) + list(file_techs))
        for tech in catalog:
            if tech.name == args.tech:
                return tech
        raise ValueError(f"unknown technology {args.tech!r}; try the catalog command")
    if len(file_techs) == 1:
        return file_techs[0]
    raise ValueError("no technology given: use --tech, --sigma-a/--sigma-t, or a spec file")


def _resolve_epsilon(args, loaded):
    if args.epsilon is not None:
        return args.epsilon
    if loaded is not None and loaded.threshold is not None:
        return loaded.threshold.epsilon
    return DEFAULT_EPSILON


def _feasibility_text(platform, tech, epsilon, report):
    window = (
        f"({_fmt(report.t_window_s[0])}, {_fmt(report.t_window_s[1])}) s"
        if report.t_window_s
        else "empty"
    )
    lines = [
        "feasibility report",
        "==================",
        f"platform:    t2 = {_fmt(platform.t2_s)} s, sensitivity = {_fmt(platform.sensitivity)} (dimensionless)",
        f"technology:  {tech.name}",
        f"  sigma_a (dimensionless): {_fmt(tech.sigma_a)}",
        f"  sigma_t (s):             {_fmt(tech.sigma_t_s)}",
        f"  band (Hz):               [{_fmt(tech.bw_low_hz)}, {_fmt(tech.bw_high_hz)}]",
        f"threshold:   epsilon = {_fmt(epsilon)} (dimensionless)",
        f"verdict:     {'FEASIBLE' if report.feasible else 'INFEASIBLE'}",
        f"gate-time window (s):      {window}",
        f"  t_min (s):               {_fmt(report.t_min_s)}",
        f"  t_max (s):               {_fmt(report.t_max_s)}",
        f"  jitter-only floor (s):   {_fmt(report.jitter_floor_s)}",
        f"limiting constraints:      {', '.join(report.limiting_constraints) or 'none'}",
        "improvement factors (dimensionless):",
    ]
    for name in budget.CONSTRAINTS:
        lines.append(f"  {name:<12} {_fmt(report.improvement_factors[name])}")
    lines += [
        f"required bandwidth at t_max (Hz): {_fmt(report.required_bandwidth_hz)}",
        f"required bandwidth at t_min (Hz): {_fmt(report.required_bandwidth_at_t_min_hz)}",
        f"technology band sufficient:       {'yes' if report.bandwidth_ok else 'no'}",
    ]
    return "\n".join(lines) + "\n"


def cmd_feasibility(args):
    started = time.monotonic()
    loaded = _load_spec_file(args.spec_file) if args.spec_file else None
    platform, platform_name = _resolve_platform(args, loaded)
    tech = _resolve_technology(args, loaded)
    epsilon = _resolve_epsilon(args, loaded)
    report = budget.feasibility(platform, tech, epsilon, strict_bandwidth=args.strict_bandwidth)

    text = _feasibility_text(platform, tech, epsilon, report)
    print(text, end="")

    os.makedirs(args.out, exist_ok=True)
    txt_path = os.path.join(args.out, "feasibility.txt")
    with open(txt_path, "w") as fh:
        fh.write(text)
    json_path = os.path.join(args.out, "feasibility.json")
    _write_json(
        json_path,
        {
            "platform": {"name": platform_name, "t2_s": platform.t2_s,
                         "sensitivity": platform.sensitivity},
            "technology": {
                "name": tech.name,
                "sigma_a": tech.sigma_a,
                "sigma_t_s": tech.sigma_t_s,
                "bw_low_hz": tech.bw_low_hz,
                "bw_high_hz": tech.bw_high_hz,
                "notes": tech.notes,
            },
            "epsilon": epsilon,
            "strict_bandwidth": args.strict_bandwidth,
            "feasible": report.feasible,
            "t_window_s": list(report.t_window_s) if report.t_window_s else None,
            "t_min_s": report.t_min_s,
            "t_max_s": report.t_max_s,
            "jitter_floor_s": report.jitter_floor_s,
            "limiting_constraints": list(report.limiting_constraints),
            "improvement_factors": report.improvement_factors,
            "required_bandwidth_hz": report.required_bandwidth_hz,
            "required_bandwidth_at_t_min_hz": report.required_bandwidth_at_t_min_hz,
            "bandwidth_ok": report.bandwidth_ok,
        },
    )
    _write_manifest(
        args.out,
        "feasibility",
        {
            "platform": platform_name,
            "t2_s": platform.t2_s,
            "sensitivity": platform.sensitivity,
            "technology": tech.name,
            "sigma_a": tech.sigma_a,
            "sigma_t_s": tech.sigma_t_s,
            "epsilon": epsilon,
            "strict_bandwidth": args.strict_bandwidth,
        },
        None,
        [txt_path, json_path],
        started,
    )
    return 0


# ---------------------------------------------------------------------------
# gate


def cmd_gate(args):
    if args.phase_error is not None and args.dj is not None:
        raise ValueError("give either --phase-error or --dj/--dt, not both")
    target = swap_power_target(args.alpha)
    theta_target = math.pi * args.alpha
    lines = [
        "gate report",
        "===========",
        f"alpha (dimensionless):          {_fmt(args.alpha)}",
        f"target phase (rad):             {_fmt(theta_target)}",
        "target unitary (basis |00>, |01>, |10>, |11>):",
        *_matrix_lines(target),
    ]
    if args.phase_error is not None:
        delta = args.phase_error
        lines.append(f"delta_theta (rad):              {_fmt(delta)}")
    elif args.dj is not None:
        dt = args.dt if args.dt is not None else 0.0
        delta = relative_error_to_phase_error(theta_target, args.dj, dt)
        first = relative_error_to_phase_error_first_order(theta_target, args.dj, dt)
        lines += [
            f"dj_over_j (dimensionless):      {_fmt(args.dj)}",
            f"dt_over_t (dimensionless):      {_fmt(dt)}",
            f"delta_theta exact (rad):        {_fmt(delta)}",
            f"delta_theta first-order (rad):  {_fmt(first)}",
        ]
    else:
        raise ValueError("give --phase-error, or --dj (optionally with --dt)")
    lines.append(f"infidelity (dimensionless):     {_fmt(gate_error_vs_phase(delta))}")
    print("\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# mc and sweep


def _mc_config(args):
    noise_spec = ControlNoiseSpec(
        sigma_a=args.sigma_a or 0.0,
        sigma_t_s=args.sigma_t or 0.0,
        distribution=args.distribution,
    )
    dephasing = DephasingSpec(args.t2) if args.t2 is not None else None
    return McConfig(
        n_samples=args.n,
        seed=args.seed,
        target_alpha=args.alpha,
        nominal=pulse_for_target(args.alpha, args.duration),
        noise=noise_spec,
        dephasing=dephasing,
        sensitivity=args.sensitivity,
    )


CSV_HEADER = ["axis_value", "mean_infidelity", "stderr", "analytic_prediction",
              "n_samples", "seed"]


def _write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)


def _mc_manifest_params(args, cfg):
    return {
        "target_alpha": cfg.target_alpha,
        "nominal_duration_s": cfg.nominal.duration_s,
        "nominal_j_rad_per_s": cfg.nominal.j_rad_per_s,
        "sigma_a": cfg.noise.sigma_a,
        "sigma_t_s": cfg.noise.sigma_t_s,
        "distribution": cfg.noise.distribution,
        "t2_s": cfg.dephasing.t2_q1_s if cfg.dephasing else None,
        "sensitivity": cfg.sensitivity,
        "n_samples": cfg.n_samples,
        "workers": args.workers,
    }


def cmd_mc(args):
    started = time.monotonic()
    cfg = _mc_config(args)
    result = montecarlo.estimate_infidelity(cfg, n_workers=args.workers)
    analytic = montecarlo.analytic_infidelity(cfg)

    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "mc.csv")
    _write_csv(
        csv_path,
        [["", _fmt(result.mean_infidelity), _fmt(result.stderr), _fmt(analytic),
          cfg.n_samples, cfg.seed]],
    )
    _write_manifest(args.out, "mc", _mc_manifest_params(args, cfg), cfg.seed,
                    [csv_path], started)
    print(f"mean infidelity (dimensionless): {_fmt(result.mean_infidelity)}")
    print(f"stderr (dimensionless):          {_fmt(result.stderr)}")
    print(f"analytic prediction:             {_fmt(analytic)}")
    print(f"rejected draws:                  {result.n_rejected}")
    print(f"wrote {csv_path}")
    return 0


def cmd_sweep(args):
    started = time.monotonic()
    cfg = _mc_config(args)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise ValueError("--values must contain at least one number")
    points = montecarlo.sweep(cfg, args.axis, values, n_workers=args.workers)

    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "sweep.csv")
    _write_csv(
        csv_path,
        [
            [_fmt(p.value), _fmt(p.result.mean_infidelity), _fmt(p.result.stderr),
             _fmt(p.analytic_prediction), cfg.n_samples, cfg.seed]
            for p in points
        ],
    )
    params = _mc_manifest_params(args, cfg)
    params["axis"] = montecarlo.normalize_axis(args.axis)
    params["values"] = values
    _write_manifest(args.out, "sweep", params, cfg.seed, [csv_path], started)
    print(f"{len(points)} rows written to {csv_path}")
    return 0


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args):
    entries = budget.merge_catalog(_user_technologies(args.file))
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "name": t.name,
                        "sigma_a": t.sigma_a,
                        "sigma_t_s": t.sigma_t_s,
                        "bw_low_hz": t.bw_low_hz,
                        "bw_high_hz": t.bw_high_hz,
                        "notes": t.notes,
                    }
                    for t in entries
                ],
                indent=2,
                sort_keys=True,
            )
        )
        return 0
    header = (
        f"{'name':<28} {'sigma_a (dimensionless)':>24} {'sigma_t (s)':>14} "
        f"{'bw_low (Hz)':>12} {'bw_high (Hz)':>13}"
    )
    print(header)
    print("-" * len(header))
    for t in entries:
        print(
            f"{t.name:<28} {t.sigma_a:>24.3e} {t.sigma_t_s:>14.3e} "
            f"{t.bw_low_hz:>12.3e} {t.bw_high_hz:>13.3e}"
        )
        if t.notes:
            print(f"    {t.notes}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_mc_flags(sub):
    sub.add_argument("--alpha", type=float, default=0.5, help="SWAP exponent of the target gate")
    sub.add_argument("--duration", type=float, default=5e-9,
                     help="nominal pulse duration in seconds (default 5e-9)")
    sub.add_argument("--sigma-a", type=float, default=0.0,
                     help="relative amplitude noise (dimensionless)")
    sub.add_argument("--sigma-t", type=float, default=0.0, help="timing jitter in seconds")
    sub.add_argument("--distribution", choices=DISTRIBUTIONS, default="gaussian")
    sub.add_argument("--t2", type=float, default=None,
                     help="dephasing time in seconds (omit for no dephasing)")
    sub.add_argument("--sensitivity", type=float, default=1.0,
                     help="logarithmic sensitivity of exchange to the control field")
    sub.add_argument("--n", type=int, default=10000, help="number of Monte Carlo samples")
    sub.add_argument("--seed", type=int, default=0, help="RNG seed (default 0, reproducible)")
    sub.add_argument("--workers", type=int, default=1,
                     help="worker threads; results are identical for any count")
    sub.add_argument("--out", default=DEFAULT_OUT_DIR, help="output directory")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="exchsim",
        description="Exchange-gate noise budgets, feasibility verdicts, and Monte Carlo checks.",
    )
    parser.add_argument("--version", action="version", version=f"exchsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("feasibility", help="evaluate a technology against the error budget")
    p.add_argument("--platform", help="builtin platform name (e.g. si-spin)")
    p.add_argument("--t2", type=float, help="platform T2 in seconds (with --sensitivity)")
    p.add_argument("--sensitivity", type=float, help="platform sensitivity (with --t2)")
    p.add_argument("--tech", help="technology name from the catalog")
    p.add_argument("--sigma-a", type=float, help="custom technology: relative amplitude noise")
    p.add_argument("--sigma-t", type=float, help="custom technology: timing jitter in seconds")
    p.add_argument("--bw-low", type=float, default=0.0, help="custom technology band low edge (Hz)")
    p.add_argument("--bw-high", type=float, default=math.inf,
                   help="custom technology band high edge (Hz)")
    p.add_argument("--epsilon", type=float, default=None,
                   help=f"error threshold (default {DEFAULT_EPSILON})")
    p.add_argument("--spec-file", help="INI spec file providing platform/technology/threshold")
    p.add_argument("--strict-bandwidth", action="store_true",
                   help="let the bandwidth requirement gate feasibility")
    p.add_argument("--out", default=DEFAULT_OUT_DIR, help="output directory")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("gate", help="closed-form error of one fractional-SWAP gate")
    p.add_argument("--alpha", type=float, required=True, help="SWAP exponent")
    p.add_argument("--phase-error", type=float, help="pulse-area error in radians")
    p.add_argument("--dj", type=float, help="relative exchange-strength error")
    p.add_argument("--dt", type=float, help="relative duration error (with --dj)")
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("mc", help="Monte Carlo infidelity estimate")
    _add_mc_flags(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("sweep", help="Monte Carlo estimates along one parameter axis")
    _add_mc_flags(p)
    p.add_argument("--axis", required=True,
                   help=f"sweep axis, one of {', '.join(SWEEP_AXES)}")
    p.add_argument("--values", required=True, help="comma-separated axis values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("catalog", help="list control technologies")
    p.add_argument("--file", help="INI spec file with extra technology entries")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RejectedSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
