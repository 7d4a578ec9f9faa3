#!/usr/bin/env python3
"""Count every (alpha, r) isomorphism between distinct family curves.

For each q the script enumerates all changes of variables between every
pair of family curves and reports, per residue class of q mod 12, how many
isomorphisms each F_q-isomorphic ordered pair carries.  For the doubling
family this is the check behind the "two isomorphisms per pair" rule.
"""

import argparse
from collections import Counter, defaultdict

from curvecensus import doubling, tripling
from curvecensus.census import prime_powers
from curvecensus.curve import iso_witness_counts
from curvecensus.field import field_of_order


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="doubling", choices=("tripling", "doubling"))
    ap.add_argument("--q-max", type=int, default=101)
    args = ap.parse_args()

    fam = tripling if args.family == "tripling" else doubling
    curve = tripling.t_curve if args.family == "tripling" else doubling.d_curve
    min_p = 5 if args.family == "tripling" else 3
    per_class = defaultdict(Counter)
    for q in prime_powers(3, args.q_max):
        F = field_of_order(q)
        if F.p < min_p:
            continue
        curves = [curve(u) for u in fam.admissible_params(F)]
        counts = iso_witness_counts(curves)
        hist = Counter(n for (i, j), n in counts.items() if i != j)
        per_class[f"q = {q % 12} mod 12" if F.p > 3 else "char 3"].update(hist)
        extra = f"  n_q(direct) = {doubling.n_q_direct(F)}" if fam is doubling else ""
        print(f"q = {q:4d}: isomorphisms per pair {dict(sorted(hist.items()))}"
              f"  total {sum(n * c for n, c in hist.items())}{extra}")
    print()
    for key, hist in sorted(per_class.items(), key=str):
        print(f"{key}: {dict(sorted(hist.items()))}")


if __name__ == "__main__":
    main()
