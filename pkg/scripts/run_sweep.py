#!/usr/bin/env python3
"""Verify every prime power in a range and write the sweep table as CSV.

    python3 scripts/run_sweep.py --q-max 1000 --jobs 4 --out sweep.csv
"""

import argparse
import csv
import sys
import time

from curvecensus.census import SWEEP_CSV_FIELDS, sweep, sweep_row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="both", choices=("both", "tripling", "doubling"))
    ap.add_argument("--q-min", type=int, default=3)
    ap.add_argument("--q-max", type=int, default=1000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    t0 = time.perf_counter()
    recs = sweep(args.family, args.q_min, args.q_max, jobs=args.jobs)
    elapsed = time.perf_counter() - t0

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.DictWriter(fh, fieldnames=SWEEP_CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(sweep_row(r) for r in recs)
    if fh is not sys.stdout:
        fh.close()

    bad = [r for r in recs if not r.passed]
    for r in bad:
        print(r.summary(), file=sys.stderr)
    print(f"{len(recs) - len(bad)}/{len(recs)} records pass in {elapsed:.1f} s", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
