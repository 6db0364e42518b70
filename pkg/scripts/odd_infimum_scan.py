"""Smallest dual ratio the simplex search finds for odd polynomials, per degree.

Prints one CSV row per odd degree with the proven floor 1/d and the
1/sqrt(d) level for comparison.

    python scripts/odd_infimum_scan.py --degrees 3:11 --restarts 16
"""

import argparse
import csv
import sys
import time
from math import sqrt

from dualsmale.search import SearchConfig, minimize_dual_ratio


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="3:15", help="odd degree range a:b (inclusive)")
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--max-evals", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    lo, hi = (int(x) for x in args.degrees.split(":"))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["degree", "best_D", "one_over_d", "one_over_sqrt_d", "best_D_times_d", "flags", "seconds"])
    for d in range(lo | 1, hi + 1, 2):
        cfg = SearchConfig(
            degree=d,
            poly_class="odd",
            restarts=args.restarts,
            max_evals_per_restart=args.max_evals,
            seed=args.seed + d,
        )
        t0 = time.perf_counter()
        res = minimize_dual_ratio(cfg, workers=args.workers)
        out.writerow([d, repr(res.best_D), repr(1 / d), repr(1 / sqrt(d)), repr(res.best_D * d), len(res.flags), f"{time.perf_counter() - t0:.1f}"])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
