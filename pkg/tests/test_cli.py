import csv
import io
import json
import subprocess
import sys

import pytest

from cnum.cache import GenusCache, parse_lines
from cnum.cli import CSV_HEADER, ReportRecord, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_classify_congruent():
    code, text = run("classify", "6")
    rec = json.loads(text)
    assert code == 0
    assert rec["status"] == "congruent" and rec["point"] == "2,1"
    assert "point:found" in rec["provenance"]


def test_classify_not_squarefree():
    code, text = run("classify", "12")
    assert code == 2
    assert json.loads(text)["error"] == "not squarefree"


def test_classify_corollary():
    code, text = run("classify", "2")
    rec = json.loads(text)
    assert code == 0 and rec["status"] == "non_congruent"
    assert "corollary:A0" in rec["provenance"]


def test_classgroup_tunnell_lvalue():
    assert json.loads(run("classgroup", "14")[1]) | {"forms": None} == {
        "d": 14, "D": -56, "h": 4, "divisors": [4], "g": 2, "h2": 1, "forms": None
    }
    t = json.loads(run("tunnell", "1")[1])
    assert (t["A"], t["B"], t["nonvanishing"]) == (2, 2, True)
    lv = json.loads(run("lvalue", "1")[1])
    assert lv["consistency"] == "ok" and lv["nearest"] == 1
    code, text = run("lvalue", "5")
    assert code == 2 and json.loads(text)["error"] == "sign mismatch"
    assert json.loads(run("lvalue", "5", "--order", "1")[1])["value"] > 0


def test_usage_errors():
    assert run("frobnicate")[0] == 64
    assert run("classify", "abc")[0] == 64
    assert run("scan", "--from", "1")[0] == 64
    assert run()[0] == 64


def test_scan_csv_shape():
    code, text = run("scan", "--from", "1", "--to", "10")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 8
    assert [int(row.split(",")[0]) for row in lines[1:]] == [1, 2, 3, 5, 6, 7, 10]


def test_scan_jobs_do_not_change_output():
    one = run("scan", "--from", "1", "--to", "400", "--jobs", "1")[1]
    many = run("scan", "--from", "1", "--to", "400", "--jobs", "8")[1]
    assert one == many


def test_jsonl_and_csv_carry_the_same_records():
    csv_text = run("scan", "--from", "1", "--to", "200")[1]
    jsonl_text = run("scan", "--from", "1", "--to", "200", "--format", "jsonl")[1]
    from_csv = [ReportRecord.from_csv_row(r) for r in csv.DictReader(io.StringIO(csv_text))]
    from_json = [ReportRecord.from_json(line) for line in jsonl_text.splitlines()]
    assert from_csv == from_json
    for r in from_json:
        assert ReportRecord.from_json(r.to_json()) == r


def test_timing_column():
    text = run("scan", "--from", "1", "--to", "10", "--timing")[1]
    rows = list(csv.DictReader(io.StringIO(text)))
    assert all(float(r["ms"]) >= 0 for r in rows)
    text = run("scan", "--from", "1", "--to", "10")[1]
    assert all(r["ms"] == "" for r in csv.DictReader(io.StringIO(text)))


def test_cache_cold_warm_and_deleted(isolated_cache):
    cold = run("scan", "--from", "1", "--to", "300")[1]
    assert isolated_cache.exists()
    table = parse_lines(isolated_cache.read_text())
    assert len(table) == sum(1 for _ in csv.DictReader(io.StringIO(cold)))
    warm = run("scan", "--from", "1", "--to", "300")[1]
    assert warm == cold
    # a warm run appends nothing
    assert parse_lines(isolated_cache.read_text()) == table
    isolated_cache.unlink()
    assert run("scan", "--from", "1", "--to", "300")[1] == cold


def test_cache_ignores_garbage(isolated_cache):
    isolated_cache.write_text("garbage\n14\t2\t4\n5\tx\t2\t1\n")
    assert GenusCache().table == {}
    assert run("classify", "14")[0] == 0
    assert parse_lines(isolated_cache.read_text())[14] == (2, 4, 1)


def test_scan_out_file(tmp_path):
    target = tmp_path / "out.csv"
    code, text = run("scan", "--from", "1", "--to", "10", "--out", str(target))
    assert code == 0 and text == ""
    assert target.read_text().splitlines()[0] == ",".join(CSV_HEADER)


def test_scan_io_error(tmp_path):
    code, _ = run("scan", "--from", "1", "--to", "10", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 74


def test_density_outputs():
    code, text = run("density", "--limit", "200", "--residue", "5", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["classes"][0]["fractions"]["congruent"] > 0
    code, text = run("density", "--limit", "200")
    assert code == 0 and text.startswith("limit 200")
    assert len(text.splitlines()) == 8


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cnum", "classify", "5"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "congruent"


@pytest.mark.parametrize("n", [1, 3, 5, 6, 7, 34])
def test_classify_record_round_trip(n):
    rec = ReportRecord.from_json(run("classify", str(n))[1])
    assert rec.n == n and rec.g is not None
    row = dict(zip(CSV_HEADER, rec.csv_row()))
    assert ReportRecord.from_csv_row(row) == rec
