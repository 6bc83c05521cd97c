"""Exact class counts next to their large-n estimates.

    python scripts/census_table.py --q 3 --n-max 5 > census_q3.csv
"""

import argparse
import csv
import sys

from mpmath import mp, nstr

from codecensus.asymptotics import estimate_class_count
from codecensus.census import census
from codecensus.field import field_of_order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--groups", default="permutation,monomial,semilinear")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    f = field_of_order(args.q)
    w = csv.writer(sys.stdout)
    w.writerow(["group", "n", "k", "q", "exact", "estimate", "exact_over_estimate"])
    for kind in args.groups.split(","):
        if kind == "semilinear" and f.h == 1:
            continue
        for n in range(1, args.n_max + 1):
            for k in range(n + 1):
                exact = census(kind, f, n, k, workers=args.threads).count
                est = estimate_class_count(kind, n, k, args.q, digits=15)
                with mp.workdps(20):
                    w.writerow([kind, n, k, args.q, exact, nstr(est.value(), 8), nstr(est.ratio(exact), 8)])


if __name__ == "__main__":
    main()
