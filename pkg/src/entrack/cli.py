"""Command-line front end: run a scenario or ensemble job, write CSV/JSON.

Every stochastic run takes an explicit --seed; there are no time-based
defaults, so identical invocations produce byte-identical data files (the
manifest's timestamps are the only exception). Thread count never changes
results: Monte Carlo draws use per-sample child streams keyed by sample
index, so scheduling cannot reorder randomness.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, boundaries, exports, rmt
from .scenarios import exact_cover, grover, primes, shor

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Semantic flag problems that argparse cannot catch; exits 2."""


def _parse_renyi(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(float(tok) if "." in tok else int(tok))
    if not out:
        raise UsageError("empty Renyi degree list")
    return tuple(out)


def _parse_int_list(text: str):
    return [int(t) for t in text.split(",") if t.strip()]


def _resolve_instance(token: str):
    p = Path(token)
    if p.exists():
        return exact_cover.load_instance(p), str(p)
    names = exact_cover.pinned_instance_names()
    if token in names:
        return exact_cover.load_pinned_instance(token), f"pinned:{token}"
    raise UsageError(f"instance {token!r} is neither a file nor a pinned name "
                     f"(available: {', '.join(names)})")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit_trajectory(args, traj, command):
    started = exports.utc_now()
    out = _out_dir(args)
    csv_path = out / "trajectory.csv"
    exports.write_trajectory_csv(traj, csv_path)
    outputs = [csv_path]
    if args.json:
        json_path = out / "trajectory.json"
        exports.write_trajectory_json(traj, json_path, grid=args.grid)
        outputs.append(json_path)
    results = dict(traj.results)
    results["findings"] = traj.findings
    exports.write_manifest(out / "manifest.json", command, traj.config,
                           traj.seeds, outputs, started, results)
    print(f"wrote {csv_path} ({len(traj.points)} points)")
    return 0


# ---------------------------------------------------------------------------
# scenario commands


def cmd_adiabatic(args) -> int:
    inst, origin = _resolve_instance(args.instance)
    traj = exact_cover.adiabatic_trajectory(
        inst, s_step=args.s_step, partitions=args.partitions, seed=args.seed,
        renyi_degrees=_parse_renyi(args.renyi))
    traj.config["instance"] = origin
    traj.results["peak_entropy_s"] = exact_cover.peak_entropy_s(traj)
    return _emit_trajectory(args, traj, ["adiabatic", origin])


def cmd_grover(args) -> int:
    if (args.instance is None) == (args.marked is None):
        raise UsageError("give exactly one of --instance or --marked/--n")
    if args.instance is not None:
        inst, origin = _resolve_instance(args.instance)
        traj = grover.grover_ec_trajectory(inst, seed=args.seed,
                                           iterations=args.iterations,
                                           renyi_degrees=_parse_renyi(args.renyi))
        traj.config["instance"] = origin
    else:
        if args.n is None:
            raise UsageError("--marked needs --n for the register size")
        oracle = grover.PermutationOracle(args.marked, args.n)
        traj = grover.grover_custom_oracle_trajectory(
            oracle, args.n, seed=args.seed, iterations=args.iterations,
            renyi_degrees=_parse_renyi(args.renyi))
        origin = f"marked:{args.marked}"
    return _emit_trajectory(args, traj, ["grover", origin])


def cmd_shor(args) -> int:
    cfg = shor.ShorConfig(args.N, args.a, seed=args.seed)
    traj = shor.shor_trajectory(cfg, renyi_degrees=_parse_renyi(args.renyi))
    return _emit_trajectory(args, traj, ["shor", str(args.N), str(args.a)])


def cmd_primes(args) -> int:
    traj = primes.prime_trajectory(args.n, with_qft=args.qft,
                                   renyi_degrees=_parse_renyi(args.renyi))
    return _emit_trajectory(args, traj, ["primes", str(args.n)])


# ---------------------------------------------------------------------------
# ensemble commands


def cmd_rmt(args) -> int:
    out = _out_dir(args)
    started = exports.utc_now()
    if args.ensemble == "mpd":
        if args.beta is None and args.ratio is None:
            raise UsageError("mpd needs --beta or --ratio")
        beta = args.beta if args.beta is not None else round(args.alpha / args.ratio)
        lam = args.alpha / beta
        cfg = rmt.EnsembleConfig(args.alpha, beta, 0.0, args.sigma,
                                 args.samples, args.seed)
        spectra = rmt.sample_wishart(cfg, threads=args.threads)
        _, hi = boundaries.mpd_edges(args.sigma, lam)
        pooled = np.concatenate([s.values for s in spectra])
        counts, edges = np.histogram(pooled, bins=args.bins, range=(0.0, hi * 1.05))
        path = out / "mpd.csv"
        exports.write_mpd_csv(path, edges, counts, args.sigma, lam)
        ks = rmt.mpd_ks(spectra, args.sigma, lam)
        config = {"alpha": args.alpha, "beta": beta, "sigma": args.sigma,
                  "samples": args.samples, "bins": args.bins}
        results = {"ks": ks, "lam": lam, "atom": boundaries.mpd_atom(lam)}
        print(f"wrote {path} (KS {ks:.5f} over {pooled.size} eigenvalues)")
    elif args.ensemble == "dominant":
        grid = np.linspace(0.0, args.gamma_max, args.gamma_steps)
        sweep = rmt.dominant_sweep(args.alpha, args.beta, grid, args.samples,
                                   args.seed, sigma=args.sigma,
                                   threads=args.threads)
        path = out / "dominant.csv"
        exports.write_dominant_csv(path, sweep)
        config = {"alpha": args.alpha, "beta": args.beta, "sigma": args.sigma,
                  "samples": args.samples, "gamma_max": args.gamma_max,
                  "gamma_steps": args.gamma_steps}
        results = {"max_rel_err": max(abs(r.mean_lambda0 - r.prediction) / r.prediction
                                      for r in sweep)}
        print(f"wrote {path} ({len(sweep)} gamma values)")
    elif args.ensemble == "page":
        betas = _parse_int_list(args.betas)
        if not betas:
            raise UsageError("--betas needs at least one value")
        runs = [rmt.page_mc(args.alpha, b, args.samples, args.seed + i,
                            threads=args.threads)
                for i, b in enumerate(betas)]
        path = out / "page.csv"
        exports.write_page_csv(path, runs)
        config = {"alpha": args.alpha, "betas": betas, "samples": args.samples}
        results = {"deviations": {str(r.beta): abs(r.mean - r.prediction)
                                  for r in runs}}
        print(f"wrote {path} ({len(runs)} ensembles x {args.samples} samples)")
    else:  # conditional
        stats = rmt.sample_rho_stats(args.alpha, args.beta, args.samples,
                                     args.seed, threads=args.threads)
        bins = rmt.conditional_bins(stats, bins=args.bins)
        path = out / "conditional.csv"
        exports.write_conditional_csv(path, bins)
        config = {"alpha": args.alpha, "beta": args.beta,
                  "samples": args.samples, "bins": args.bins}
        results = {"bins_used": len(bins)}
        print(f"wrote {path} ({len(bins)} bins)")
    exports.write_manifest(out / "manifest.json", ["rmt", args.ensemble],
                           config, {"seed": args.seed}, [path], started, results)
    return 0


def cmd_boundary(args) -> int:
    params = {}
    for key in ("alpha", "beta", "sigma", "lam"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    try:
        if args.curve == "mpd_density" and "sigma" in params and "lam" in params:
            _, hi = boundaries.mpd_edges(params["sigma"], params["lam"])
            x_max = args.x_max if args.x_max is not None else hi * 1.05
            x_min = args.x_min if args.x_min is not None else 0.0
        else:
            x_min = args.x_min if args.x_min is not None else 1e-6
            x_max = args.x_max if args.x_max is not None else 1.0
        grid = np.linspace(x_min, x_max, args.grid)
        curve = boundaries.sample_curve(args.curve, params, grid)
    except ValueError as err:
        raise UsageError(str(err)) from err
    out = _out_dir(args)
    started = exports.utc_now()
    path = out / "boundary.csv"
    exports.write_boundary_csv(curve, path)
    exports.write_manifest(out / "manifest.json", ["boundary", args.curve],
                           {"curve": args.curve, **params}, {}, [path], started,
                           {"meta": curve.meta, "points": len(curve.samples)})
    print(f"wrote {path} ({len(curve.samples)} points, {curve.meta['clipped']} clipped)")
    return 0


def cmd_validate(args) -> int:
    rows = exports.read_trajectory_csv(args.file)
    problems = exports.validate_trajectory_rows(rows)
    for p in problems:
        print(p, file=sys.stderr)
    print(f"{args.file}: {len(rows)} rows, {len(problems)} problems")
    return 1 if problems else 0


# ---------------------------------------------------------------------------
# parser


def _common_output_flags(p):
    p.add_argument("--out", default=".", help="output directory (default: .)")
    p.add_argument("--json", action="store_true",
                   help="also write trajectory.json with boundary curves attached")
    p.add_argument("--grid", type=int, default=256,
                   help="boundary sample count for the JSON mirror")
    p.add_argument("--renyi", default="2,3",
                   help="comma-separated Renyi degrees (default 2,3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrack",
        description="Simulate quantum algorithms and track their entanglement "
                    "trajectories against analytic boundaries.")
    parser.add_argument("--version", action="version", version=f"entrack {__version__}")
    sub = parser.add_subparsers(
        dest="command", required=True,
        metavar="{adiabatic,grover,shor,primes,rmt,boundary}")

    p = sub.add_parser("adiabatic", help="interpolation sweep on an instance")
    p.add_argument("--instance", required=True, help="path or pinned instance name")
    p.add_argument("--s-step", type=float, default=0.1)
    p.add_argument("--partitions", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    _common_output_flags(p)
    p.set_defaults(func=cmd_adiabatic)

    p = sub.add_parser("grover", help="amplitude amplification search")
    p.add_argument("--instance", help="path or pinned instance name")
    p.add_argument("--marked", type=int, help="single marked state (with --n)")
    p.add_argument("--n", type=int, help="search register size for --marked")
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    _common_output_flags(p)
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("shor", help="semi-classical order finding")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _common_output_flags(p)
    p.set_defaults(func=cmd_shor)

    p = sub.add_parser("primes", help="factor-count states")
    p.add_argument("--n", type=int, required=True, help="even register size")
    p.add_argument("--qft", action="store_true",
                   help="pair each state with its Fourier transform")
    _common_output_flags(p)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("rmt", help="random-matrix ensemble experiments")
    rsub = p.add_subparsers(dest="ensemble", required=True,
                            metavar="{mpd,dominant,page,conditional}")

    q = rsub.add_parser("mpd", help="pooled spectra vs the limiting density")
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--beta", type=int, default=None)
    q.add_argument("--ratio", type=float, default=None,
                   help="alpha/beta when --beta is not given")
    q.add_argument("--sigma", type=float, default=1.0)
    q.add_argument("--samples", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--bins", type=int, default=120)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", default=".")
    q.set_defaults(func=cmd_rmt)

    q = rsub.add_parser("dominant", help="mean dominant eigenvalue vs shift")
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--beta", type=int, required=True)
    q.add_argument("--gamma-max", type=float, default=2.0)
    q.add_argument("--gamma-steps", type=int, default=9)
    q.add_argument("--sigma", type=float, default=1.0)
    q.add_argument("--samples", type=int, default=500)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", default=".")
    q.set_defaults(func=cmd_rmt)

    q = rsub.add_parser("page", help="mean entropy vs the ln a - a/2b law")
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--betas", required=True, help="comma-separated list")
    q.add_argument("--samples", type=int, default=30)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", default=".")
    q.set_defaults(func=cmd_rmt)

    q = rsub.add_parser("conditional", help="mean entropy binned by lambda0")
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--beta", type=int, required=True)
    q.add_argument("--samples", type=int, required=True)
    q.add_argument("--bins", type=int, default=10)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", default=".")
    q.set_defaults(func=cmd_rmt)

    p = sub.add_parser("boundary", help="sample an analytic curve")
    p.add_argument("--curve", required=True,
                   help=f"one of {', '.join(sorted(boundaries.CURVES))}")
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_boundary)

    # row re-validation; intentionally absent from the subcommand listing
    p = sub.add_parser("validate")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"entrack: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # runtime failures exit 1 with a diagnostic
        print(f"entrack: {type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
