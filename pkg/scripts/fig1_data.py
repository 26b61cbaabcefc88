"""Plot-ready data for the bound-overlay figure.

Estimates the integrated density of states on the default energy grid for
several couplings and writes one long-format CSV row per (coupling, energy)
together with the closed-form bounds, the fixed-point envelope and the free
IDS.  The curves for different couplings land on top of each other inside
the lower band, which is the point of the figure.

    python3 scripts/fig1_data.py --out fig1.csv --plot fig1.png
"""

import argparse
import sys

from anderson_ids import (default_energy_grid, envelope_fp, format_cell,
                          free_ids, monte_carlo_ids, special_energies,
                          theorem1_bounds, Seed)


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=float, default=0.3)
    parser.add_argument("--zetas", default="4,20",
                        help="comma-separated couplings, each >= 4")
    parser.add_argument("--size", type=int, default=100_000)
    parser.add_argument("--reps", type=int, default=4)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--grid", type=int, default=401)
    parser.add_argument("--special-up-to", type=int, default=12)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", default=None, help="CSV path (default stdout)")
    parser.add_argument("--plot", default=None, help="optional PNG path")
    return parser.parse_args(argv)


def band_columns(p, x):
    if 0.0 < x < 4.0:
        lo, hi = theorem1_bounds(p, x)
        return lo, hi, envelope_fp(p, x)
    return None, None, None


def main(argv=None):
    args = parse_args(argv)
    zetas = [float(z) for z in args.zetas.split(",")]
    grid = default_energy_grid(points=args.grid,
                               special_up_to=args.special_up_to)
    curves = {}
    for i, zeta in enumerate(zetas):
        curves[zeta] = monte_carlo_ids(args.p, zeta, args.size, args.reps,
                                       grid, seed=Seed(args.seed, i * args.reps),
                                       threads=args.threads)

    rows = []
    for zeta in zetas:
        curve = curves[zeta]
        for i, x in enumerate(curve.energies):
            lo, hi, fp = band_columns(args.p, float(x))
            rows.append((zeta, float(x), float(curve.values[i]),
                         float(curve.stderr[i]), lo, hi, fp,
                         free_ids(float(x))))

    out = open(args.out, "w") if args.out else sys.stdout
    try:
        out.write(f"# p={args.p}\n# size={args.size}\n# reps={args.reps}\n"
                  f"# seed={args.seed}\n")
        out.write("zeta,energy,value,stderr,lower,upper,fp,free\n")
        for row in rows:
            out.write(",".join(format_cell(v) for v in row) + "\n")
    finally:
        if args.out:
            out.close()

    if args.plot:
        render(args, grid, curves)
    return 0


def render(args, grid, curves):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    inside = [float(x) for x in grid if 0.0 < x < 4.0]
    lo = [theorem1_bounds(args.p, x)[0] for x in inside]
    hi = [theorem1_bounds(args.p, x)[1] for x in inside]
    fp = [envelope_fp(args.p, x) for x in inside]
    ax.fill_between(inside, lo, hi, alpha=0.25, color="grey",
                    label="closed-form bounds")
    ax.plot(inside, fp, "k--", lw=1, label="envelope $f_p$")
    for zeta, curve in curves.items():
        ax.plot(curve.energies, curve.values, lw=1,
                label=f"estimate, coupling {zeta:g}")
    for energy, _, _ in special_energies(args.p, 6):
        ax.axvline(energy.lower, color="tab:red", lw=0.5, alpha=0.5)
        ax.axvline(energy.upper, color="tab:red", lw=0.5, alpha=0.5)
    ax.set_xlim(0, 4)
    ax.set_ylim(0, 1)
    ax.set_xlabel("energy")
    ax.set_ylabel("integrated density of states")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    raise SystemExit(main())
