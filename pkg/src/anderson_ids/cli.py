"""Command-line front end.

Subcommands:

* ``bounds``      closed-form bound curves on an energy grid (CSV)
* ``ids``         Monte Carlo IDS estimate from large random matrices (CSV)
* ``blockids``    gap-sampled estimates of a single bound series (CSV)
* ``special``     exact special energies and IDS values (CSV)
* ``conjecture``  IDS at special energies for couplings down to 2 (CSV)
* ``lemma5``      raw extreme-gap ratio samples (CSV)
* ``verify``      run named checks, emit JSON reports, exit 1 on FAIL

Every output embeds its full configuration (``# key=value`` comment lines in
CSV, a ``config`` object in JSON) and is byte-identical across reruns with
the same arguments.  Exit codes: 0 success, 1 verification failure, 2 usage
or domain error, 3 resource guard.
"""

import argparse
import json
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import limits
from .estimator import (CSV_COLUMNS, block_ids, default_energy_grid,
                        format_cell, monte_carlo_ids, write_curve_csv)
from .formulas import (BandEdge, BoundVariant, envelope_fp, free_ids,
                       lifschitz_bounds, special_energies, theorem1_bounds)
from .potential import Seed, ybar_ratio
from .spectral import CountMode
from . import verify as verify_mod

CHECK_NAMES = ("theorem1", "interlacing", "special", "cor4", "lifschitz",
               "lemma5", "symmetry")


@contextmanager
def _open_out(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _write_comments(fh, config: dict) -> None:
    for key in sorted(config):
        fh.write(f"# {key}={config[key]}\n")


def _grid_from_args(args, default_special: int) -> np.ndarray:
    special = args.special_up_to
    if special is None:
        special = default_special
    return default_energy_grid(points=args.grid, x_min=args.x_min,
                               x_max=args.x_max, special_up_to=special)


def _mode_from_args(args) -> CountMode:
    return CountMode.STRICT if args.mode == "strict" else CountMode.WEAK


def _threads_from_args(args) -> int:
    if args.threads is not None:
        return args.threads
    return os.cpu_count() or 1


def _config_echo(args, skip=("handler", "out")) -> dict:
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        echo[key] = value
    return echo


def cmd_bounds(args) -> int:
    q = 1.0 - args.p
    energies = _grid_from_args(args, default_special=0)
    with _open_out(args.out) as fh:
        _write_comments(fh, _config_echo(args))
        fh.write("energy,lower,upper,fp,free,lif_lo,lif_hi\n")
        for x in energies:
            x = float(x)
            lo, hi = theorem1_bounds(args.p, x, args.tol)
            fp = envelope_fp(args.p, x)
            free = free_ids(x)
            if x <= 2.0:
                lif_lo, lif_hi = lifschitz_bounds(args.p, x, BandEdge.LOWER)
            else:
                # mirrored upper-edge bounds transported to direct bounds on I(x)
                m_lo, m_hi = lifschitz_bounds(args.p, 4.0 - x, BandEdge.UPPER)
                lif_lo, lif_hi = q - m_hi, q - m_lo
            cells = (x, lo, hi, fp, free, lif_lo, lif_hi)
            fh.write(",".join(format_cell(c) for c in cells) + "\n")
    return 0


def cmd_ids(args) -> int:
    energies = _grid_from_args(args, default_special=12)
    curve = monte_carlo_ids(args.p, args.zeta, args.size, args.reps, energies,
                            _mode_from_args(args), Seed(args.seed),
                            threads=_threads_from_args(args))
    if not args.with_bounds:
        with _open_out(args.out) as fh:
            write_curve_csv(curve, fh, config=_config_echo(args))
        return 0
    with _open_out(args.out) as fh:
        echo = dict(curve.meta)
        echo.update(_config_echo(args))
        _write_comments(fh, echo)
        fh.write(",".join(CSV_COLUMNS + ("lower", "upper")) + "\n")
        meta = curve.meta
        fixed = (meta["p"], meta["zeta"], meta["L"], meta["reps"], meta["seed"])
        for i, x in enumerate(curve.energies):
            x = float(x)
            if 0.0 < x < 4.0:
                lo, hi = theorem1_bounds(args.p, x, args.tol)
            else:
                lo = hi = None
            se = None if curve.stderr is None else curve.stderr[i]
            cells = (x, curve.values[i], se, *fixed, lo, hi)
            fh.write(",".join(format_cell(c) for c in cells) + "\n")
    return 0


def cmd_blockids(args) -> int:
    energies = _grid_from_args(args, default_special=12)
    variant = BoundVariant(args.variant)
    curve = block_ids(args.p, variant, args.size, Seed(args.seed),
                      energies=energies)
    with _open_out(args.out) as fh:
        write_curve_csv(curve, fh, config=_config_echo(args))
    return 0


def cmd_special(args) -> int:
    rows = special_energies(args.p, args.n_max)
    with _open_out(args.out) as fh:
        _write_comments(fh, _config_echo(args))
        fh.write("n,x_lower,x_upper,ids_lower,ids_upper\n")
        for se, lo_val, up_val in rows:
            cells = (se.n, se.lower, se.upper, lo_val, up_val)
            fh.write(",".join(format_cell(c) for c in cells) + "\n")
    return 0


def cmd_conjecture(args) -> int:
    zetas = [float(z) for z in args.zetas.split(",") if z.strip()]
    rows = verify_mod.conjecture_experiment(
        args.p, args.n, zetas, L=args.size, reps=args.reps,
        seed=Seed(args.seed), threads=_threads_from_args(args))
    with _open_out(args.out) as fh:
        _write_comments(fh, _config_echo(args))
        fh.write("zeta,n,branch,estimate,stderr,closed_form,proved\n")
        for row in rows:
            cells = (row.zeta, row.n, row.branch, row.estimate, row.stderr,
                     row.closed_form, row.proved)
            fh.write(",".join(format_cell(c) for c in cells) + "\n")
    return 0


def cmd_lemma5(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise ValueError("--sizes must list at least one gap count")
    for n in sizes:
        if n < 1000:
            raise ValueError(f"each size must be >= 1000, got {n}")
    with _open_out(args.out) as fh:
        _write_comments(fh, _config_echo(args))
        fh.write("n,rep,ratio\n")
        for j, n in enumerate(sizes):
            for r in range(args.reps):
                ratio = ybar_ratio(args.p, n, Seed(args.seed, j * args.reps + r))
                fh.write(f"{n},{r},{format_cell(ratio)}\n")
    return 0


def _run_one_check(name: str, args, energies, threads: int):
    seed = Seed(args.seed)
    if name == "theorem1":
        return verify_mod.check_theorem1(
            args.p, args.zeta, L=args.size or 100_000, reps=args.reps,
            energies=energies, seed=seed, threads=threads)
    if name == "interlacing":
        return verify_mod.interlacing_suite(
            trials=args.trials, max_size=args.max_size, seed=seed)
    if name == "special":
        return verify_mod.check_special_energies(
            args.p, args.zeta, L=args.size or 100_000, reps=args.reps,
            n_max=args.n_max, seed=seed, threads=threads)
    if name == "cor4":
        return verify_mod.check_corollary4(
            args.p, args.zeta, L=args.size or 100_000, reps=args.reps,
            energies=energies, seed=seed, threads=threads)
    if name == "lifschitz":
        return verify_mod.check_lifschitz(
            args.p, args.zeta, L_large=args.size or 1_000_000, seed=seed,
            threads=threads)
    if name == "lemma5":
        sizes = tuple(int(s) for s in args.sizes.split(",") if s.strip())
        return verify_mod.check_lemma5(args.p, n_list=sizes, reps=args.reps,
                                       seed=seed)
    if name == "symmetry":
        return verify_mod.check_symmetry(
            args.p, args.zeta, L=args.size or 100_000, reps=args.reps,
            energies=energies, seed=seed, threads=threads)
    raise ValueError(f"unknown check {name!r}")


def cmd_verify(args) -> int:
    threads = _threads_from_args(args)
    energies = None
    if args.grid != 401 or args.x_min != 0.01 or args.x_max != 3.99 \
            or args.special_up_to is not None:
        energies = _grid_from_args(args, default_special=12)
    names = sorted(CHECK_NAMES) if args.check == "all" else [args.check]
    reports = [_run_one_check(name, args, energies, threads) for name in names]
    payload = {"config": _config_echo(args),
               "reports": [r.to_dict() for r in reports]}
    with _open_out(args.out) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(verify_mod.summary_table(reports), file=sys.stderr)
    failed = any(r.status is verify_mod.CheckStatus.FAIL for r in reports)
    return 1 if failed else 0


def _add_common(sub, p=True, zeta=False, size=None, reps=None, seed=True,
                grid=False, tol=None, mode=False, threads=False):
    if p:
        sub.add_argument("--p", type=float, default=0.3,
                         help="Bernoulli parameter in (0, 1) (default 0.3)")
    if zeta:
        sub.add_argument("--zeta", type=float, default=4.0,
                         help="coupling strength (default 4)")
    if size is not None:
        sub.add_argument("--size", type=int, default=size,
                         help=f"problem size (default {size})")
    if reps is not None:
        sub.add_argument("--reps", type=int, default=reps,
                         help=f"independent repetitions (default {reps})")
    if seed:
        sub.add_argument("--seed", type=int, default=0,
                         help="master seed (default 0)")
    if grid:
        sub.add_argument("--grid", type=int, default=401,
                         help="number of uniform grid points (default 401)")
        sub.add_argument("--x-min", type=float, default=0.01,
                         help="grid lower end (default 0.01)")
        sub.add_argument("--x-max", type=float, default=3.99,
                         help="grid upper end (default 3.99)")
        sub.add_argument("--special-up-to", type=int, default=None,
                         help="inject exact special energies up to this index")
    if tol is not None:
        sub.add_argument("--tol", type=float, default=tol,
                         help=f"series truncation tolerance (default {tol})")
    if mode:
        sub.add_argument("--mode", choices=("strict", "weak"), default="weak",
                         help="count eigenvalues < x (strict) or <= x (weak)")
    if threads:
        sub.add_argument("--threads", type=int, default=None,
                         help="worker threads (default: available cores)")
    sub.add_argument("--out", default=None,
                     help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anderson-ids",
        description="Integrated density of states of the disordered "
                    "Bernoulli chain: closed-form bounds, large-scale "
                    "estimates, and verification checks.")
    subs = parser.add_subparsers(dest="command", required=True)

    sb = subs.add_parser("bounds", help="closed-form bound curves (CSV)")
    _add_common(sb, seed=False, grid=True, tol=1e-12)
    sb.set_defaults(handler=cmd_bounds)

    si = subs.add_parser("ids", help="Monte Carlo IDS estimate (CSV)")
    _add_common(si, zeta=True, size=100_000, reps=4, grid=True, tol=1e-12,
                mode=True, threads=True)
    si.add_argument("--with-bounds", action="store_true",
                    help="append closed-form bound columns")
    si.set_defaults(handler=cmd_ids)

    sk = subs.add_parser("blockids",
                         help="gap-sampled estimate of one bound series (CSV)")
    _add_common(sk, size=1_000_000, grid=True)
    sk.add_argument("--variant", required=True,
                    choices=[v.value for v in BoundVariant],
                    help="which series to estimate")
    sk.set_defaults(handler=cmd_blockids)

    ss = subs.add_parser("special",
                         help="exact special energies and IDS values (CSV)")
    _add_common(ss, seed=False)
    ss.add_argument("--n-max", type=int, default=12,
                    help="largest special-energy index (default 12)")
    ss.set_defaults(handler=cmd_special)

    sc = subs.add_parser("conjecture",
                         help="special-energy IDS for couplings down to 2 (CSV)")
    _add_common(sc, size=100_000, reps=8, threads=True)
    sc.add_argument("--n", type=int, default=3,
                    help="special-energy index (default 3)")
    sc.add_argument("--zetas", default="2,2.5,3,4,20",
                    help="comma list of couplings >= 2")
    sc.set_defaults(handler=cmd_conjecture)

    sl = subs.add_parser("lemma5", help="raw extreme-gap ratio samples (CSV)")
    _add_common(sl, reps=32)
    sl.add_argument("--sizes", default="10000,100000,1000000",
                    help="comma list of gap counts (each >= 1000)")
    sl.set_defaults(handler=cmd_lemma5)

    sv = subs.add_parser("verify", help="run checks, emit JSON reports")
    sv.add_argument("check", choices=CHECK_NAMES + ("all",),
                    help="which check to run")
    _add_common(sv, zeta=True, size=None, reps=8, grid=True, threads=True)
    sv.add_argument("--size", type=int, default=None,
                    help="volume override (default: per-check)")
    sv.add_argument("--trials", type=int, default=100,
                    help="interlacing: number of random realizations")
    sv.add_argument("--max-size", type=int, default=500,
                    help="interlacing: largest realization length")
    sv.add_argument("--n-max", type=int, default=6,
                    help="special: largest special-energy index")
    sv.add_argument("--sizes", default="10000,100000,1000000",
                    help="lemma5: comma list of gap counts")
    sv.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except limits.ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
