#!/usr/bin/env python3
"""Crossing-count scaling study over synthetic city grids.

Sweeps Gotham-style grids with a fixed number of straight expressways and
writes one CSV row per size (n, proper crossings, sqrt(n)), then prints the
fitted log-log slope.  With a constant expressway count the counts grow
like sqrt(n).

Usage:
  python scripts/crossing_scaling.py --sides 16,32,64,128,256 --out crossings.csv
"""

import argparse
import csv
import math
import sys
import time

import numpy as np

from roadgeom import crossings, gen_gotham


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sides", default="16,32,64,128,256")
    ap.add_argument("--expressways", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="crossing_scaling.csv")
    args = ap.parse_args()

    sides = [int(s) for s in args.sides.split(",") if s]
    rows = []
    t0 = time.time()
    for side in sides:
        g = gen_gotham(side, args.expressways, args.seed)
        proper = crossings.proper_only(crossings.find_crossings(g))
        rows.append((f"gotham-{side}", g.n, len(proper), math.sqrt(g.n)))
        print(f"side {side:4d}: n={g.n:6d} crossings={len(proper):5d}", file=sys.stderr)

    with open(args.out, "w", newline="") as handle:
        w = csv.writer(handle, lineterminator="\n")
        w.writerow(["network", "n", "crossings", "sqrt_n"])
        w.writerows(rows)

    ns = np.array([r[1] for r in rows], dtype=float)
    counts = np.array([r[2] for r in rows], dtype=float)
    slope = np.polyfit(np.log(ns), np.log(counts), 1)[0]
    print(f"log-log slope: {slope:.3f}  ({time.time() - t0:.1f}s)  -> {args.out}")


if __name__ == "__main__":
    main()
