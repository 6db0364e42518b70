"""Distribution of n * D(P) for random normalized polynomials.

A value of n * D(P) below 1 would contradict the conjectured 1/n floor;
the minimum column shows how close random sampling gets.

    python scripts/dual_ratio_survey.py --degrees 2:10 --samples 5000
"""

import argparse
import csv
import sys

import numpy as np

from dualsmale.ratios import ratio_report
from dualsmale.sampling import random_normalized


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="2:10")
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--radius", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    lo, hi = (int(x) for x in args.degrees.split(":"))
    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["degree", "min_nD", "median_nD", "min_S_over_ceiling", "max_S_over_ceiling"])
    for n in range(lo, hi + 1):
        reps = [ratio_report(random_normalized(rng, n, args.radius)) for _ in range(args.samples)]
        nD = np.array([r.dual_ratio for r in reps]) * n
        # S / (1 - 1/n): above 1 would contradict the conjectured ceiling
        sr = np.array([r.smale_ratio for r in reps]) / (1 - 1 / n)
        out.writerow([n, f"{nD.min():.6g}", f"{np.median(nD):.6g}", f"{sr.min():.6g}", f"{sr.max():.6g}"])


if __name__ == "__main__":
    main()
