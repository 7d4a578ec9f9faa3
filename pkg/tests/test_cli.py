import csv
import io
import json
import subprocess
import sys

import pytest

from curvecensus.census import SWEEP_CSV_FIELDS, CensusReport
from curvecensus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--family", "doubling", "--q", "5")
    assert code == 0
    d = json.loads(out)
    assert (d["jbar_count"], d["fq_count"]) == (3, 3)
    assert CensusReport.from_dict(d).to_dict() == d


def test_census_extension_field_json(capsys):
    code, out, _ = run(capsys, "census", "--family", "doubling", "--p", "3", "--k", "2")
    d = json.loads(out)
    assert code == 0 and d["q"] == 9 and d["modulus"] == [1, 0, 1]
    # extension elements serialize as coefficient lists
    assert all(isinstance(u, list) for c in d["classes"] for u in c["jbar_members"])


def test_census_bad_characteristic(capsys):
    code, out, err = run(capsys, "census", "--family", "tripling", "--q", "4")
    assert code == 2 and out == "" and "error" in err


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--family", "tripling", "--q", "25", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 23  # one per admissible u
    assert "\r" not in out


def test_verify_exit_codes(capsys):
    code, out, err = run(capsys, "verify", "--family", "doubling", "--q", "27")
    assert code == 0
    d = json.loads(out)
    assert d["pass"] is True
    assert next(c for c in d["checks"] if c["name"] == "fq_count")["formula_value"] == 20
    assert "PASS" in err


def test_verify_mismatch_exit_1(capsys, monkeypatch):
    from curvecensus import doubling

    monkeypatch.setattr(doubling, "d_count_jbar_formula", lambda q: 0)
    code, _, _ = run(capsys, "verify", "--family", "doubling", "--q", "7")
    assert code == 1


def test_sweep_csv_schema(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, _, err = run(capsys, "sweep", "--q-min", "3", "--q-max", "30", "--format", "csv", "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(SWEEP_CSV_FIELDS)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [(r["family"], r["q"]) for r in rows][:3] == [("doubling", "3"), ("tripling", "5"), ("doubling", "5")]
    assert all(r["pass"] == "True" for r in rows)
    assert f"{len(rows)}/{len(rows)} records pass" in err
    assert err.count("q=") == len(rows)


def test_sweep_empty_range(capsys):
    assert run(capsys, "sweep", "--q-min", "10", "--q-max", "9")[0] == 2


def test_points(capsys):
    assert run(capsys, "points", "--target", "C", "--q", "7")[1].strip() == "25 (affine)"
    assert run(capsys, "points", "--target", "legendre13", "--q", "5")[1].strip() == "8 (projective)"
    assert run(capsys, "points", "--target", "legendre34", "--q", "5")[1].strip() == "8 (projective)"
    assert run(capsys, "points", "--target", "gamma", "--q", "5")[1].strip() == "7 (affine)"
    assert run(capsys, "points", "--target", "C", "--q", "5")[0] == 2
    assert run(capsys, "points", "--target", "C", "--q", "9")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--family", "tripling", "--q", "7", "--u", "1")
    assert code == 0
    assert "label: A1" in out and "j: 2" in out and "jbar class: {1}" in out
    code, out, _ = run(capsys, "classify", "--family", "tripling", "--q", "7", "--u", "4")
    assert code == 2


def test_isom(capsys):
    code, out, _ = run(capsys, "isom", "--family", "doubling", "--q", "11", "--u", "1", "--v", "8")
    assert code == 0 and out.startswith("yes alpha=")
    code, out, _ = run(capsys, "isom", "--family", "doubling", "--q", "7", "--u", "2", "--v", "3")
    assert code == 0 and out.strip() == "no"


def test_bad_arguments(capsys):
    assert run(capsys, "census", "--family", "doubling")[0] == 2
    assert run(capsys, "census", "--family", "doubling", "--q", "15")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "curvecensus", "points", "--target", "C", "--q", "7"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and r.stdout.strip() == "25 (affine)"
