import json

import pytest

from curvecensus import doubling, tripling
from curvecensus.census import (
    CensusError,
    CensusReport,
    VerificationRecord,
    brute_census,
    prime_powers,
    sweep,
    sweep_row,
    sweep_targets,
    SWEEP_CSV_FIELDS,
    verify,
)
from curvecensus.curve import brute_force_iso
from curvecensus.field import FieldError, field_of_order


def test_prime_powers():
    assert prime_powers(3, 30) == [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]
    assert 729 in prime_powers(700, 1000) and 961 in prime_powers(700, 1000)


def test_census_examples():
    rep = brute_census("tripling", 7)
    assert (rep.jbar_count, rep.fq_count) == (5, 5)
    rep = brute_census("doubling", 5)
    assert (rep.jbar_count, rep.fq_count) == (3, 3)
    assert sorted(c.j.v for c in rep.classes) == [0, 1, 3]
    rep = brute_census("tripling", 5)
    assert [[u.v for u in c.members] for c in rep.classes] == [[2], [3, 4]]
    assert [[[u.v for u in b] for b in c.blocks] for c in rep.classes] == [[[2]], [[3, 4]]]


def test_census_rejects():
    with pytest.raises(FieldError):
        brute_census("tripling", 9)
    with pytest.raises(FieldError):
        brute_census("doubling", 4)
    with pytest.raises(FieldError):
        brute_census("doubling", 27, max_q=25)
    with pytest.raises(ValueError):
        brute_census("quadrupling", 7)


@pytest.mark.parametrize("family,q", [("tripling", 13), ("tripling", 25), ("doubling", 9), ("doubling", 27), ("doubling", 49)])
def test_census_invariants(family, q):
    rep = brute_census(family, q)
    fam = tripling if family == "tripling" else doubling
    params = sorted(u.v for u in fam.admissible_params(field_of_order(q)))
    assert sorted(u.v for c in rep.classes for u in c.members) == params
    assert rep.fq_count >= rep.jbar_count
    for c in rep.classes:
        assert 1 <= len(c.blocks) <= 2
        assert sorted(u.v for b in c.blocks for u in b) == sorted(u.v for u in c.members)


@pytest.mark.parametrize("family,q", [("tripling", 11), ("tripling", 13), ("doubling", 9), ("doubling", 13)])
def test_census_blocks_match_brute_force(family, q):
    rep = brute_census(family, q)
    curve = tripling.t_curve if family == "tripling" else doubling.d_curve
    for c in rep.classes:
        for b1 in c.blocks:
            for b2 in c.blocks:
                got = brute_force_iso(curve(b1[0]), curve(b2[-1])) is not None
                assert got == (b1 is b2)


def test_block_overflow_is_loud(monkeypatch):
    import curvecensus.census as census

    monkeypatch.setattr(census, "split_blocks", lambda members, f: [[u] for u in members])
    with pytest.raises(CensusError):
        census.brute_census("tripling", 19)


def test_verify_examples():
    rec = verify("doubling", 9)
    assert rec.passed
    assert rec.check("jbar_count").formula == 5 and rec.check("fq_count").oracle == 6
    rec = verify("tripling", 13)
    assert rec.check("jbar_count").formula == 10
    rec = verify("tripling", 7)
    assert rec.check("fq_count").formula == 5
    assert rec.quantities["N1"] == 25
    assert verify("doubling", 27).check("fq_count").oracle == 20


def test_verify_records_mismatch_without_raising(monkeypatch):
    monkeypatch.setattr(tripling, "t_count_jbar_formula", lambda q: -1)
    rec = verify("tripling", 7)
    assert not rec.passed
    assert [c.name for c in rec.failures()] == ["jbar_count"]


def test_sweep_targets():
    assert sweep_targets("doubling", 3, 10) == [("doubling", q) for q in (3, 5, 7, 9)]
    assert [q for _, q in sweep_targets("tripling", 5, 13)] == [5, 7, 11, 13]
    assert sweep_targets("both", 3, 3) == [("doubling", 3)]
    assert sweep_targets("both", 5, 5) == [("tripling", 5), ("doubling", 5)]
    with pytest.raises(ValueError):
        sweep_targets("both", 10, 9)


def test_sweep_parallel_matches_serial():
    a = sweep("both", 3, 40)
    b = sweep("both", 3, 40, jobs=2)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
    assert all(r.passed for r in a)


def test_determinism_and_round_trip():
    for family, q in (("tripling", 25), ("doubling", 27), ("doubling", 11)):
        a = json.dumps(brute_census(family, q).to_dict())
        b = json.dumps(brute_census(family, q).to_dict())
        assert a == b
        back = CensusReport.from_dict(json.loads(a))
        assert json.dumps(back.to_dict()) == a
    rec = verify("tripling", 11)
    d = json.loads(json.dumps(rec.to_dict()))
    assert VerificationRecord.from_dict(d).to_dict() == d


def test_sweep_row_schema():
    rec = verify("doubling", 7)
    row = sweep_row(rec)
    assert tuple(row) == SWEEP_CSV_FIELDS
    assert row["N1"] == "" and row["N"] == 8 and row["pass"] is True
