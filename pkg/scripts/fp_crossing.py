"""Probe the envelope on both sides of the lower special energies.

The bounds pinch the IDS exactly at the special energies, where it agrees
with the envelope f_p.  Between them the estimate is free to wander inside
the bounds; this experiment measures on which side of the envelope it sits
just left and just right of each special energy.

    python3 scripts/fp_crossing.py --n-values 2,3,4,5,6 --offset 0.05
"""

import argparse
import sys

from anderson_ids import fp_crossing_experiment, Seed


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=float, default=0.3)
    parser.add_argument("--zeta", type=float, default=4.0)
    parser.add_argument("--n-values", default="2,3,4,5,6",
                        help="special-energy indices to straddle")
    parser.add_argument("--offset", type=float, default=0.05,
                        help="fractional distance toward the neighbouring "
                             "special energy")
    parser.add_argument("--size", type=int, default=100_000)
    parser.add_argument("--reps", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", default=None, help="CSV path (default stdout)")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    n_values = [int(n) for n in args.n_values.split(",")]
    rows = fp_crossing_experiment(args.p, args.zeta, n_values=n_values,
                                  offset=args.offset, L=args.size,
                                  reps=args.reps, seed=Seed(args.seed),
                                  threads=args.threads)

    out = open(args.out, "w") if args.out else sys.stdout
    try:
        out.write(f"# p={args.p}\n# zeta={args.zeta}\n# offset={args.offset}\n"
                  f"# size={args.size}\n# reps={args.reps}\n"
                  f"# seed={args.seed}\n")
        out.write("n,side,x,estimate,stderr,fp,diff\n")
        for row in rows:
            out.write(f"{row['n']},{row['side']},{row['x']!r},"
                      f"{row['estimate']!r},{row['stderr']!r},"
                      f"{row['fp']!r},{row['diff']!r}\n")
    finally:
        if args.out:
            out.close()

    above = sum(1 for r in rows if r["side"] == "left" and r["diff"] > 0)
    lefts = sum(1 for r in rows if r["side"] == "left")
    print(f"estimate above envelope just left of the special energy: "
          f"{above}/{lefts} cases", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
