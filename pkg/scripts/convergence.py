"""Plot-ready CSV of exact-vs-theta distances for both parities.

    python scripts/convergence.py --q 2 --m-max 30 > convergence.csv
"""

import argparse
import csv
import sys

from mpmath import nstr

from codecensus.distributions import convergence_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--m-max", type=int, default=25)
    ap.add_argument("--digits", type=int, default=20)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["parity", "m", "exact_gap", "tv_lo", "tv_hi"])
    for parity in ("even", "odd"):
        for row in convergence_report(parity, args.q, range(0, args.m_max + 1), args.digits):
            w.writerow([parity, row.m, nstr(row.exact_gap, 10), nstr(row.tv.lo, 10), nstr(row.tv.hi, 10)])


if __name__ == "__main__":
    main()
