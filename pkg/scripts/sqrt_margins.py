"""Empirical margin D(P) - 1/sqrt(d) over random odd polynomials.

The 1/sqrt(d) level is a conditional bound, so the output is a distribution,
not a pass/fail verdict: per degree, the minimum, quartiles and the share of
samples with a negative margin.

    python scripts/sqrt_margins.py --samples 2000 --radius 2
"""

import argparse
import csv
import sys

import numpy as np

from dualsmale.oddcert import sqrt_margin_check
from dualsmale.sampling import random_odd


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="3:15")
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--radius", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    lo, hi = (int(x) for x in args.degrees.split(":"))
    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["degree", "samples", "min_margin", "q25", "median", "q75", "negative_share"])
    for d in range(lo | 1, hi + 1, 2):
        m = np.array([sqrt_margin_check(random_odd(rng, d, args.radius)).margin for _ in range(args.samples)])
        q25, med, q75 = np.quantile(m, [0.25, 0.5, 0.75])
        out.writerow([d, len(m), f"{m.min():.6g}", f"{q25:.6g}", f"{med:.6g}", f"{q75:.6g}", f"{np.mean(m < 0):.4f}"])


if __name__ == "__main__":
    main()
