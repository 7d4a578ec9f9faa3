"""Command-line front end.

Exit codes: 0 all checks pass, 1 a formula/census mismatch, 2 bad invocation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import doubling, tripling
from .census import (
    CENSUS_MAX_Q,
    FAMILIES,
    SWEEP_CSV_FIELDS,
    brute_census,
    sweep,
    sweep_row,
    verify,
)
from .curve import isomorphic_fq, point_count, split_blocks
from .field import FieldError, FieldSpec, field_of_order, make_field

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _field_from_args(args) -> FieldSpec:
    try:
        if getattr(args, "p", None) is not None:
            F = make_field(args.p, args.k or 1)
            if args.q is not None and args.q != F.q:
                raise UsageError(f"--q {args.q} disagrees with --p {args.p} --k {args.k}")
            return F
        if args.q is None:
            raise UsageError("give --q or --p/--k")
        return field_of_order(args.q)
    except FieldError as e:
        raise UsageError(str(e))


def _parse_elem(F: FieldSpec, text: str):
    """Integer (reduced mod p) or a comma-separated coefficient list."""
    try:
        if "," in text or text.startswith("["):
            coeffs = [int(t) for t in text.strip("[]").split(",") if t.strip()]
            return F.elem(coeffs)
        return F(int(text))
    except ValueError:
        raise UsageError(f"cannot read field element {text!r}")


def _write(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(fieldnames, rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _family(name: str):
    return {"tripling": tripling, "doubling": doubling}[name]


def _admissible(name: str, u) -> bool:
    return _family(name).admissible(u)


def _curve(name: str, u):
    return tripling.t_curve(u) if name == "tripling" else doubling.d_curve(u)


def _label(name: str, u) -> str | None:
    return tripling.t_label(u) if name == "tripling" else None


# -- commands --------------------------------------------------------------------

def cmd_census(args) -> int:
    F = _field_from_args(args)
    try:
        rep = brute_census(args.family, F, max_q=args.max_q)
    except FieldError as e:
        raise UsageError(str(e))
    if args.format == "json":
        _write(args, json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        rows = []
        for ci, c in enumerate(rep.classes):
            for bi, blk in enumerate(c.blocks):
                for u in blk:
                    rows.append({
                        "family": rep.family, "q": F.q, "u": json.dumps(u.to_json()),
                        "j": json.dumps(c.j.to_json()), "label": _label(rep.family, u) or "",
                        "class_index": ci, "block_index": bi,
                    })
        rows.sort(key=lambda r: (r["class_index"], r["block_index"]))
        fields = ["family", "q", "u", "j", "label", "class_index", "block_index"]
        _write(args, _csv_text(fields, rows))
    return EXIT_OK


def _record_rows(rec):
    return [
        {"family": rec.family, "q": rec.q, "check": c.name,
         "formula_value": json.dumps(d["formula_value"]),
         "oracle_value": json.dumps(d["oracle_value"]), "pass": c.passed}
        for c, d in zip(rec.checks, (c.to_dict() for c in rec.checks))
    ]


def cmd_verify(args) -> int:
    F = _field_from_args(args)
    try:
        rec = verify(args.family, F, max_q=args.max_q)
    except FieldError as e:
        raise UsageError(str(e))
    if args.format == "json":
        _write(args, json.dumps(rec.to_dict(), indent=2) + "\n")
    else:
        fields = ["family", "q", "check", "formula_value", "oracle_value", "pass"]
        _write(args, _csv_text(fields, _record_rows(rec)))
    print(rec.summary(), file=sys.stderr)
    return EXIT_OK if rec.passed else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    if args.q_min > args.q_max:
        raise UsageError(f"empty range: --q-min {args.q_min} > --q-max {args.q_max}")
    if args.q_max > CENSUS_MAX_Q:
        raise UsageError(f"--q-max exceeds the census bound {CENSUS_MAX_Q}")
    recs = sweep(args.family, args.q_min, args.q_max, jobs=args.jobs)
    if not recs:
        raise UsageError("no admissible prime powers in range")
    for rec in recs:
        print(rec.summary(), file=sys.stderr)
    if args.format == "json":
        _write(args, json.dumps([r.to_dict() for r in recs], indent=2) + "\n")
    else:
        _write(args, _csv_text(SWEEP_CSV_FIELDS, [sweep_row(r) for r in recs]))
    n_bad = sum(not r.passed for r in recs)
    print(f"{len(recs) - n_bad}/{len(recs)} records pass", file=sys.stderr)
    return EXIT_OK if n_bad == 0 else EXIT_MISMATCH


def cmd_points(args) -> int:
    F = _field_from_args(args)
    t = args.target
    try:
        if t == "C":
            count, convention = tripling.n1(F), "affine"
        elif t == "legendre13":
            count, convention = tripling.n2(F), "projective"
        elif t == "legendre34":
            if F.p == 3:
                raise UsageError("Y^2 = X(X+1)(X+3/4) needs p >= 5")
            count, convention = point_count(doubling.gamma_curve(F)), "projective"
        else:
            count, convention = doubling.gamma_affine_count(F), "affine"
    except FieldError as e:
        raise UsageError(str(e))
    print(f"{count} ({convention})")
    return EXIT_OK


def _check_u(args, F, text):
    min_p = FAMILIES[args.family].min_p
    if F.p < min_p:
        raise UsageError(f"{args.family} family needs characteristic >= {min_p}")
    u = _parse_elem(F, text)
    try:
        if not _admissible(args.family, u):
            raise UsageError(f"u = {u} is not an admissible {args.family} parameter")
    except FieldError as e:
        raise UsageError(str(e))
    return u


def cmd_classify(args) -> int:
    F = _field_from_args(args)
    u = _check_u(args, F, args.u)
    if args.family == "tripling":
        cls = tripling.t_fq_class(u)
        members, blocks = cls.jbar_members, cls.fq_blocks
        j = tripling.t_j(u)
        print(f"label: {tripling.t_label(u)}")
    else:
        members = doubling.d_jbar_class(u)
        blocks = split_blocks(members, doubling.d_curve)
        j = doubling.d_j(u)
    block = next(b for b in blocks if u in b)
    fmt = lambda xs: "{" + ", ".join(str(x) for x in xs) + "}"
    print(f"j: {j}")
    print(f"jbar class: {fmt(members)}")
    print(f"fq block: {fmt(block)}")
    return EXIT_OK


def cmd_isom(args) -> int:
    F = _field_from_args(args)
    u = _check_u(args, F, args.u)
    v = _check_u(args, F, args.v)
    w = isomorphic_fq(_curve(args.family, u), _curve(args.family, v))
    if w is None:
        print("no")
    else:
        print(f"yes alpha={w.alpha} r={w.r}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="curvecensus",
        description="Count isomorphism classes in the tripling and doubling curve "
        "families and check closed forms against an exhaustive census.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def field_args(p, need_family=True, families=("tripling", "doubling")):
        if need_family:
            p.add_argument("--family", choices=families, required=True)
        p.add_argument("--q", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--k", type=int)

    def out_args(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out")

    p = sub.add_parser("census", help="brute-force class structure at one q")
    field_args(p)
    out_args(p)
    p.add_argument("--max-q", type=int, default=CENSUS_MAX_Q)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="closed forms vs census at one q")
    field_args(p)
    out_args(p)
    p.add_argument("--max-q", type=int, default=CENSUS_MAX_Q)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="verify every prime power in a range")
    p.add_argument("--family", choices=("both", "tripling", "doubling"), default="both")
    p.add_argument("--q-min", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    out_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("points", help="point counts of the auxiliary curves")
    p.add_argument("--target", choices=("C", "legendre13", "legendre34", "gamma"), required=True)
    field_args(p, need_family=False)
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("classify", help="label, j and classes of one parameter")
    field_args(p)
    p.add_argument("--u", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("isom", help="decide F_q-isomorphism of two family curves")
    field_args(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_isom)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
