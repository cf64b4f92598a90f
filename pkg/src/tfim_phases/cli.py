"""Command-line front end: correlators, phase, sweep, preset, oracle."""

from __future__ import annotations

import argparse
import os
import sys

from . import ising
from .errors import RankDeficientError, VisibilityError
from .phases import compute_phases
from .sweep import SweepConfig, emit_csv, emit_svg, preset, run_sweep

_KIND_CHOICES = {"interferometric": ("interferometric",),
                 "uhlmann": ("uhlmann",),
                 "both": ("interferometric", "uhlmann")}


def _build_parser():
    p = argparse.ArgumentParser(
        prog="tfim-phases",
        description="Geometric phases of reduced states of the transverse-field "
                    "Ising chain: correlators, per-point phases, and sweeps.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("correlators", help="magnetization and two-site correlators")
    c.add_argument("--lam", type=float, required=True, help="coupling ratio, >= 0")
    c.add_argument("--r", type=int, nargs="+", default=[1], help="site separations")
    c.add_argument("--quad-tol", type=float, default=1e-10)

    ph = sub.add_parser("phase", help="phases at a single (lambda, r, theta) point")
    ph.add_argument("--lam", type=float, required=True)
    ph.add_argument("--r", type=int, default=1)
    ph.add_argument("--theta", type=float, required=True, help="polar angle in radians")
    ph.add_argument("--kinds", choices=sorted(_KIND_CHOICES), default="both")
    ph.add_argument("--loop-steps", type=int, default=2000)
    ph.add_argument("--quad-tol", type=float, default=1e-10)
    ph.add_argument("--rank-eps", type=float, default=1e-8)

    sw = sub.add_parser("sweep", help="grid sweep with CSV (and optional SVG) output")
    sw.add_argument("--config", help="key=value file; command-line flags override")
    sw.add_argument("--lam-min", type=float)
    sw.add_argument("--lam-max", type=float)
    sw.add_argument("--lam-steps", type=int)
    sw.add_argument("--r", type=int, nargs="+")
    sw.add_argument("--theta", type=float, nargs="+")
    sw.add_argument("--kinds", choices=sorted(_KIND_CHOICES))
    sw.add_argument("--loop-steps", type=int)
    sw.add_argument("--quad-tol", type=float)
    sw.add_argument("--rank-eps", type=float)
    sw.add_argument("--no-unwrap", action="store_true")
    sw.add_argument("--out", help="CSV output path (overrides config output_path)")
    sw.add_argument("--svg", help="optional SVG output path")
    sw.add_argument("--svg-y", default="delta_gamma_unwrapped")
    sw.add_argument("--workers", type=int, default=1)

    pr = sub.add_parser("preset", help="run a named figure-reproduction sweep")
    pr.add_argument("name", choices=["fig1", "fig2", "fig3"])
    pr.add_argument("--out-dir", default=".")
    pr.add_argument("--workers", type=int, default=1)

    orc = sub.add_parser("oracle", help="finite-chain exact-diagonalization comparison")
    orc.add_argument("--lam", type=float, required=True)
    orc.add_argument("--n-sites", type=int, nargs="+", default=[8, 10, 12])
    orc.add_argument("--r-max", type=int, default=3)
    orc.add_argument("--quad-tol", type=float, default=1e-10)
    return p


def _cmd_correlators(args):
    params = ising.CouplingRatio(args.lam, args.quad_tol)
    print("r,m,c_xx,c_yy,c_zz")
    for r in args.r:
        c = ising.correlators(r, params)
        print(f"{r},{c.m:.12g},{c.c_xx:.12g},{c.c_yy:.12g},{c.c_zz:.12g}")
    return 0


def _cmd_phase(args):
    try:
        rec = compute_phases(
            args.lam, args.r, args.theta, kinds=_KIND_CHOICES[args.kinds],
            loop_steps=args.loop_steps, quad_tol=args.quad_tol,
            rank_eps=args.rank_eps,
        )
    except (RankDeficientError, VisibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for name in ("gamma_int_pair", "gamma_int_single", "delta_gamma",
                 "gamma_u_pair", "gamma_u_single", "delta_gamma_u"):
        val = getattr(rec, name)
        print(f"{name} = {'n/a' if val is None else format(val, '.12g')}")
    if rec.steps_used:
        print(f"steps_used = {rec.steps_used}")
        print(f"convergence_estimate = {rec.convergence_estimate:.3e}")
    return 0


def _read_config_file(path):
    values = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key] = val
    return values


def _config_from_file(values):
    kwargs = {}
    float_keys = {"lambda_min", "lambda_max", "quad_tol", "rank_eps"}
    int_keys = {"lambda_steps", "loop_steps"}
    for key, raw in values.items():
        if key in float_keys:
            kwargs[key] = float(raw)
        elif key in int_keys:
            kwargs[key] = int(raw)
        elif key == "r_list":
            kwargs[key] = tuple(int(x) for x in raw.split(",") if x.strip())
        elif key == "theta_list":
            kwargs[key] = tuple(float(x) for x in raw.split(",") if x.strip())
        elif key == "kinds":
            kwargs[key] = tuple(x.strip() for x in raw.split(",") if x.strip())
        elif key == "unwrap":
            kwargs[key] = raw.lower() in ("1", "true", "yes")
        elif key == "output_path":
            kwargs[key] = raw
        else:
            raise ValueError(f"unknown config key {key!r}")
    return kwargs


def _cmd_sweep(args):
    kwargs = {}
    if args.config:
        kwargs = _config_from_file(_read_config_file(args.config))
    if args.lam_min is not None:
        kwargs["lambda_min"] = args.lam_min
    if args.lam_max is not None:
        kwargs["lambda_max"] = args.lam_max
    if args.lam_steps is not None:
        kwargs["lambda_steps"] = args.lam_steps
    if args.r is not None:
        kwargs["r_list"] = tuple(args.r)
    if args.theta is not None:
        kwargs["theta_list"] = tuple(args.theta)
    if args.kinds is not None:
        kwargs["kinds"] = _KIND_CHOICES[args.kinds]
    if args.loop_steps is not None:
        kwargs["loop_steps"] = args.loop_steps
    if args.quad_tol is not None:
        kwargs["quad_tol"] = args.quad_tol
    if args.rank_eps is not None:
        kwargs["rank_eps"] = args.rank_eps
    if args.no_unwrap:
        kwargs["unwrap"] = False
    if args.out:
        kwargs["output_path"] = args.out
    config = SweepConfig(**kwargs)
    if not config.output_path:
        raise ValueError("no output path: pass --out or set output_path in the config file")

    records = run_sweep(config, workers=args.workers)
    emit_csv(records, config.output_path, quad_tol=config.quad_tol)
    print(f"wrote {len(records)} rows to {config.output_path}")
    if args.svg:
        emit_svg(records, args.svg, y_column=args.svg_y)
        print(f"wrote {args.svg}")
    n_bad = sum(1 for rec in records if rec.status != "ok")
    if n_bad:
        print(f"{n_bad} grid points carry error status (see the status column)")
    return 0


def _cmd_preset(args):
    config = preset(args.name)
    os.makedirs(args.out_dir, exist_ok=True)
    records = run_sweep(config, workers=args.workers)
    csv_path = os.path.join(args.out_dir, f"{args.name}.csv")
    emit_csv(records, csv_path, quad_tol=config.quad_tol)
    print(f"wrote {csv_path}")
    for kind, column in (("interferometric", "delta_gamma_unwrapped"),
                         ("uhlmann", "delta_gamma_u_unwrapped")):
        if kind in config.kinds:
            svg_path = os.path.join(args.out_dir, f"{args.name}_{column}.svg")
            emit_svg(records, svg_path, y_column=column)
            print(f"wrote {svg_path}")
    return 0


def _cmd_oracle(args):
    params = ising.CouplingRatio(args.lam, args.quad_tol)
    r_values = list(range(1, args.r_max + 1))
    thermo = {r: ising.correlators(r, params) for r in r_values}
    print(f"# thermodynamic limit vs exact diagonalization at lambda = {args.lam:g}")
    print("n_sites,r,m_ed,m_inf,c_xx_ed,c_xx_inf,c_yy_ed,c_yy_inf,c_zz_ed,c_zz_inf")
    table = {}
    for n in sorted(args.n_sites):
        ed = ising.exact_diag_correlators(n, args.lam)
        table[n] = ed
        for r in r_values:
            if r not in ed:
                continue
            t, e = thermo[r], ed[r]
            print(f"{n},{r},{e.m:.8f},{t.m:.8f},{e.c_xx:.8f},{t.c_xx:.8f},"
                  f"{e.c_yy:.8f},{t.c_yy:.8f},{e.c_zz:.8f},{t.c_zz:.8f}")
    sizes = sorted(table)
    if len(sizes) >= 2:
        gaps = [abs(table[n][1].m - thermo[1].m) for n in sizes]
        trend = "monotone" if all(a >= b for a, b in zip(gaps, gaps[1:])) else "not monotone"
        print(f"# |m_ed - m_inf| at r=1 across N={sizes}: "
              + ", ".join(f"{g:.2e}" for g in gaps) + f" ({trend})")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "correlators": _cmd_correlators,
        "phase": _cmd_phase,
        "sweep": _cmd_sweep,
        "preset": _cmd_preset,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
