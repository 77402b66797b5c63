"""Histogram of heights MC/n over ID(n) against the staircase density.

The default n = 100003 takes a few seconds.  ``--n 33920039 --bins 2000``
is the full-scale run (8480011 classes); expect hours on one core and use
``--threads`` on a bigger machine.
"""
import argparse
import csv
import math
import time

from apollonian.classes import default_threads
from apollonian.depth import heights, histogram, rmc
from apollonian.staircase import BOTTOM_MASS, build_staircase


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=100003)
    ap.add_argument("--bins", type=int, default=50)
    ap.add_argument("--t-max", type=int, default=1000)
    ap.add_argument("--threads", type=int, default=default_threads())
    ap.add_argument("--csv", help="write bin_lo,bin_hi,empirical,model")
    args = ap.parse_args()

    t0 = time.perf_counter()
    recs = rmc(args.n, workers=args.threads, chunks=args.threads)
    hist = histogram(heights(recs), args.bins)
    masses = build_staircase(args.t_max).bin_masses(args.bins)
    norm = math.fsum(masses)
    emp = [c / len(recs) for _, _, c in hist]
    model = [m / norm for m in masses]
    l1 = math.fsum(abs(a - b) for a, b in zip(emp, model))
    bottom = sum(r.bottom for r in recs) / len(recs)
    print(f"n={args.n} classes={len(recs)} time={time.perf_counter() - t0:.1f}s")
    print(f"bottom-stair fraction {bottom:.5f} (3/pi = {BOTTOM_MASS:.5f})")
    print(f"L1 distance to staircase (t_max={args.t_max}, {args.bins} bins): {l1:.5f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(["bin_lo", "bin_hi", "empirical", "model"])
            for (lo, hi, _), a, b in zip(hist, emp, model):
                wr.writerow([lo, hi, f"{a:.8f}", f"{b:.8f}"])


if __name__ == "__main__":
    main()
