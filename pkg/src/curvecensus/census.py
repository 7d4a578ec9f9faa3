"""Brute-force census of a family over F_q, and the formula-vs-census verifier.

The census groups parameters by the generic j-invariant of the family
curve and splits each group with the structured F_q-isomorphism test.  It
never touches the closed forms; verify() puts the two side by side.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import doubling, tripling
from .curve import CubicCurve, hasse_ok, j_invariant, split_blocks
from .field import (
    FieldElem,
    FieldError,
    FieldSpec,
    field_of_order,
    is_prime,
    make_field,
)

log = logging.getLogger(__name__)

CENSUS_MAX_Q = 10**4
FAMILY_NAMES = ("tripling", "doubling")


class CensusError(RuntimeError):
    pass


@dataclass(frozen=True)
class Family:
    name: str
    min_p: int
    admissible_params: Callable[[FieldSpec], list[FieldElem]]
    curve: Callable[[FieldElem], CubicCurve]


FAMILIES = {
    "tripling": Family("tripling", 5, tripling.admissible_params, tripling.t_curve),
    "doubling": Family("doubling", 3, doubling.admissible_params, doubling.d_curve),
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")


def _field(q_or_field) -> FieldSpec:
    if isinstance(q_or_field, FieldSpec):
        return q_or_field
    return field_of_order(q_or_field)


def _elem_json(x: FieldElem):
    return x.to_json()


@dataclass
class CensusClass:
    j: FieldElem
    members: list[FieldElem]
    blocks: list[list[FieldElem]]


@dataclass
class CensusReport:
    family: str
    F: FieldSpec
    classes: list[CensusClass]

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def jbar_count(self) -> int:
        return len(self.classes)

    @property
    def fq_count(self) -> int:
        return sum(len(c.blocks) for c in self.classes)

    def class_of(self) -> dict[int, CensusClass]:
        return {u.v: c for c in self.classes for u in c.members}

    def iso_pairs(self) -> set[tuple[int, int]]:
        """Ordered (u, v), u != v, of F_q-isomorphic family curves."""
        return {
            (a.v, b.v)
            for c in self.classes
            for blk in c.blocks
            for a in blk
            for b in blk
            if a != b
        }

    def jbar_pairs(self) -> set[tuple[int, int]]:
        return {
            (a.v, b.v) for c in self.classes for a in c.members for b in c.members if a != b
        }

    def to_dict(self) -> dict[str, Any]:
        F = self.F
        return {
            "family": self.family,
            "q": F.q,
            "p": F.p,
            "k": F.k,
            "modulus": list(F.modulus),
            "jbar_count": self.jbar_count,
            "fq_count": self.fq_count,
            "classes": [
                {
                    "j": _elem_json(c.j),
                    "jbar_members": [_elem_json(u) for u in c.members],
                    "fq_blocks": [[_elem_json(u) for u in b] for b in c.blocks],
                }
                for c in self.classes
            ],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> CensusReport:
        F = make_field(d["p"], d["k"])
        if list(F.modulus) != list(d["modulus"]):
            raise ValueError("report was produced with a different modulus")

        def el(x):
            return F.elem(x) if isinstance(x, list) else F(x)

        classes = [
            CensusClass(
                el(c["j"]),
                [el(u) for u in c["jbar_members"]],
                [[el(u) for u in b] for b in c["fq_blocks"]],
            )
            for c in d["classes"]
        ]
        rep = cls(d["family"], F, classes)
        if rep.jbar_count != d["jbar_count"] or rep.fq_count != d["fq_count"]:
            raise ValueError("inconsistent counts in serialized report")
        return rep


def _check_family_field(fam: Family, F: FieldSpec, max_q: int):
    if F.p < fam.min_p:
        raise FieldError(f"{fam.name} family needs characteristic >= {fam.min_p}, got {F.p}")
    if F.q > max_q:
        raise FieldError(f"q = {F.q} exceeds the census bound {max_q}")


def brute_census(family: str, q, max_q: int = CENSUS_MAX_Q) -> CensusReport:
    fam = get_family(family)
    F = _field(q)
    _check_family_field(fam, F, max_q)

    groups: dict[int, list[FieldElem]] = {}
    jval: dict[int, FieldElem] = {}
    for u in fam.admissible_params(F):
        j = j_invariant(fam.curve(u))
        groups.setdefault(j.v, []).append(u)
        jval[j.v] = j

    classes = []
    for jv, members in groups.items():
        blocks = split_blocks(members, fam.curve)
        if len(blocks) > 2:
            raise CensusError(
                f"{family} q={F.q}: class with j={jval[jv]} splits into {len(blocks)} blocks"
            )
        classes.append(CensusClass(jval[jv], members, blocks))
    classes.sort(key=lambda c: c.members[0].v)
    return CensusReport(family, F, classes)


# -- verification ------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_jsonable(t) for t in x]
    if isinstance(x, list):
        return [_jsonable(t) for t in x]
    return x


@dataclass
class Check:
    name: str
    formula: Any
    oracle: Any
    passed: bool

    def to_dict(self):
        return {
            "name": self.name,
            "formula_value": _jsonable(self.formula),
            "oracle_value": _jsonable(self.oracle),
            "pass": self.passed,
        }


@dataclass
class VerificationRecord:
    family: str
    q: int
    p: int
    k: int
    checks: list[Check] = field(default_factory=list)
    quantities: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, formula, oracle, passed: bool | None = None):
        if passed is None:
            passed = formula == oracle
        self.checks.append(Check(name, formula, oracle, bool(passed)))

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "family": self.family,
            "q": self.q,
            "p": self.p,
            "k": self.k,
            "checks": [c.to_dict() for c in self.checks],
            "quantities": {k: _jsonable(v) for k, v in self.quantities.items()},
            "pass": self.passed,
        }

    @classmethod
    def from_dict(cls, d):
        rec = cls(d["family"], d["q"], d["p"], d["k"], quantities=dict(d.get("quantities", {})))
        for c in d["checks"]:
            rec.checks.append(Check(c["name"], c["formula_value"], c["oracle_value"], c["pass"]))
        return rec

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        q = self.quantities
        line = (
            f"{self.family:8s} q={self.q:<5d} jbar {q.get('jbar_formula')}/{q.get('jbar_oracle')}"
            f"  fq {q.get('fq_formula')}/{q.get('fq_oracle')}  {status}"
        )
        bad = self.failures()
        if bad:
            line += "  failed: " + ",".join(c.name for c in bad)
        return line


def _verify_tripling(rep: CensusReport, rec: VerificationRecord):
    F, q = rep.F, rep.q
    params = tripling.admissible_params(F)
    cls_of = rep.class_of()
    blocks_by_u = {u: len(c.blocks) for u, c in cls_of.items()}

    N1 = tripling.n1(F) if q % 3 == 1 else None
    N2 = tripling.n2(F) if q % 3 == 2 else None
    jf = tripling.t_count_jbar_formula(q)
    ff = tripling.t_count_fq_formula(q, N1=N1, N2=N2)
    rec.quantities.update(
        jbar_formula=jf, jbar_oracle=rep.jbar_count,
        fq_formula=ff, fq_oracle=rep.fq_count, N1=N1, N2=N2,
    )
    rec.add("jbar_count", jf, rep.jbar_count)
    rec.add("fq_count", ff, rep.fq_count)

    bad_j = sum(1 for u in params if tripling.t_j(u) != j_invariant(tripling.t_curve(u)))
    rec.add("j_formula_mismatches", 0, bad_j)

    rec.add("table1", tripling.table1_row(q), tripling.t_partition_counts(F))
    rec.add(
        "table2",
        tripling.table2_row(q, N1=N1, N2=N2),
        tripling.t_tilde_counts(F, blocks_by_u),
    )

    bad_size = sum(
        1
        for u in params
        if len(cls_of[u.v].members) != tripling.expected_class_size(tripling.t_label(u))
    )
    rec.add("class_size_violations", 0, bad_size)

    bad_cls = sum(
        1
        for u in params
        if [x.v for x in tripling.t_jbar_class(u)] != [x.v for x in cls_of[u.v].members]
    )
    rec.add("jbar_class_mismatches", 0, bad_cls)

    lemma = tripling.lemma_iso_pairs(F)
    brute = rep.iso_pairs()
    rec.add("w_param_pairs", len(lemma), len(brute), lemma == brute)

    roots = tripling.b2_roots(F)
    if roots:
        u = roots[0]
        twisted = len(cls_of[u.v].blocks) == 1
        rec.add("b2_twist_criterion", q % 8 == 1, twisted)

    if N2 is not None:
        rec.add("hasse_N2", True, hasse_ok(N2, q))


def _verify_doubling(rep: CensusReport, rec: VerificationRecord):
    F, q = rep.F, rep.q
    params = doubling.admissible_params(F)
    cls_of = rep.class_of()

    N = doubling.legendre34_count(F) if F.p > 3 else None
    jf = doubling.d_count_jbar_formula(q)
    ff = doubling.d_count_fq_formula(q, N=N)
    c3f = doubling.c3(q)
    nb = doubling.nbar(q)
    nq_direct = doubling.n_q_direct(F)
    nq_closed = doubling.n_q_closed(F)
    nq_brute = 2 * len(rep.iso_pairs())
    nbar_brute = 2 * len(rep.jbar_pairs())
    sizes = [len(c.members) for c in rep.classes]

    rec.quantities.update(
        jbar_formula=jf, jbar_oracle=rep.jbar_count,
        fq_formula=ff, fq_oracle=rep.fq_count,
        N=N, c3=c3f, n_q=nq_direct, nbar=nb,
    )
    rec.add("jbar_count", jf, rep.jbar_count)
    rec.add("fq_count", ff, rep.fq_count)

    bad_j = sum(1 for u in params if doubling.d_j(u) != j_invariant(doubling.d_curve(u)))
    rec.add("j_formula_mismatches", 0, bad_j)

    rec.add("c3", c3f, sizes.count(3))
    rec.add("c1", doubling.c1(q), sizes.count(1))
    rec.add("class_sizes_in_1_3", 0, sum(1 for s in sizes if s not in (1, 3)))

    bad_cls = sum(
        1
        for u in params
        if [x.v for x in doubling.d_jbar_class(u)] != [x.v for x in cls_of[u.v].members]
    )
    rec.add("jbar_class_mismatches", 0, bad_cls)

    rec.add("nbar", nb, nbar_brute)
    rec.add("n_q_closed_vs_direct", nq_closed, nq_direct)
    rec.add("n_q_direct_vs_brute", nq_direct, nq_brute)
    chain = Fraction(nb - nq_direct, 8)
    rec.add("class_count_chain", chain, rep.fq_count - rep.jbar_count, chain.denominator == 1
            and chain == rep.fq_count - rep.jbar_count)

    lemma = doubling.lemma_alpha_pairs(F)
    brute = rep.iso_pairs()
    rec.add("b_param_pairs", len(lemma), len(brute), lemma == brute)

    if N is not None:
        rec.add("hasse_N", True, hasse_ok(N, q))


def verify(family: str, q, max_q: int = CENSUS_MAX_Q) -> VerificationRecord:
    rep = brute_census(family, q, max_q)
    F = rep.F
    rec = VerificationRecord(family, F.q, F.p, F.k)
    if family == "tripling":
        _verify_tripling(rep, rec)
    else:
        _verify_doubling(rep, rec)
    for c in rec.failures():
        log.warning("%s q=%d: %s formula=%s oracle=%s", family, F.q, c.name, c.formula, c.oracle)
    return rec


def prime_powers(q_min: int, q_max: int) -> list[int]:
    """All odd prime powers in [q_min, q_max], ascending."""
    out = []
    for p in range(3, q_max + 1, 2):
        if not is_prime(p):
            continue
        pk = p
        while pk <= q_max:
            if pk >= q_min:
                out.append(pk)
            pk *= p
    return sorted(out)


def sweep_targets(family: str, q_min: int, q_max: int) -> list[tuple[str, int]]:
    if q_min > q_max:
        raise ValueError(f"empty range [{q_min}, {q_max}]")
    names = FAMILY_NAMES if family == "both" else (get_family(family).name,)
    out = []
    for q in prime_powers(q_min, q_max):
        p = field_of_order(q).p
        for name in names:
            if p >= FAMILIES[name].min_p:
                out.append((name, q))
    return out


def _verify_pair(args):
    return verify(*args)


def sweep(family: str, q_min: int, q_max: int, jobs: int = 1) -> list[VerificationRecord]:
    """One record per (family, q), ascending in q; tripling before doubling."""
    targets = sweep_targets(family, q_min, q_max)
    if jobs <= 1:
        return [verify(f, q) for f, q in targets]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_pair, targets))


SWEEP_CSV_FIELDS = (
    "family", "q", "p", "k", "jbar_formula", "jbar_oracle", "fq_formula", "fq_oracle",
    "N1", "N2", "N", "c3", "n_q", "nbar", "pass",
)


def sweep_row(rec: VerificationRecord) -> dict[str, Any]:
    row = {name: "" for name in SWEEP_CSV_FIELDS}
    row.update(family=rec.family, q=rec.q, p=rec.p, k=rec.k, **{"pass": rec.passed})
    for key, val in rec.quantities.items():
        if key in row and val is not None:
            row[key] = str(val) if isinstance(val, Fraction) else val
    return row
