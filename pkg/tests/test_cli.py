import csv
import io
import json
import subprocess
import sys

import pytest

from schreier.cli import dispatch

from oracles import count_depth_one

NATS = '{"kind":"naturals"}'
WORKED = '{"kind":"prefix_arith","prefix":[2,5,6],"start":9,"step":3}'


def run(capsys, *argv):
    rc = dispatch(list(argv))
    out = capsys.readouterr().out
    return rc, out


# -- ord ------------------------------------------------------------------

def test_ord_cmp(capsys):
    assert run(capsys, "ord", "cmp", "w*2", "w^2") == (0, "less\n")
    assert run(capsys, "ord", "cmp", "w+1", "w+1") == (0, "equal\n")
    assert run(capsys, "ord", "cmp", "w^w", "w^2*5") == (0, "greater\n")


def test_ord_fs(capsys):
    rc, out = run(capsys, "ord", "fs", "--xi", "w", "--n", "3")
    assert rc == 0 and json.loads(out) == ["1", "2", "3"]
    rc, out = run(capsys, "ord", "fs", "--xi", "w^2", "--n", "2")
    assert rc == 0 and json.loads(out) == ["w+1", "w*2+1"]


def test_ord_arith(capsys):
    assert run(capsys, "ord", "arith", "add", "1", "w")[1] == "w\n"
    assert run(capsys, "ord", "arith", "mul", "w", "3")[1] == "w*3\n"


def test_ord_bad_input(capsys):
    assert dispatch(["ord", "cmp", "w^1", "w"]) == 2
    assert dispatch(["ord", "fs", "--xi", "banana"]) == 2


# -- fam ------------------------------------------------------------------

def test_fam_member_and_maximal(capsys):
    assert run(capsys, "fam", "member", "--xi", "1", "--set", "[2,3]") \
        == (0, "true\n")
    assert run(capsys, "fam", "member", "--xi", "1", "--set", "[1,2]") \
        == (0, "false\n")
    assert run(capsys, "fam", "maximal", "--xi", "1", "--set", "[2,3]") \
        == (0, "true\n")
    assert run(capsys, "fam", "maximal", "--xi", "1", "--set", "[3,4]") \
        == (0, "false\n")


def test_fam_norm(capsys):
    rc, out = run(capsys, "fam", "norm", "--xi", "1", "--vector",
                  '{"2": "1/2", "3": "1/2"}')
    assert rc == 0 and out == "1/1\n"


def test_fam_enum(capsys):
    rc, out = run(capsys, "fam", "enum", "--xi", "1", "--window", "5")
    payload = json.loads(out)
    assert rc == 0
    assert len(payload["members"]) == count_depth_one(5)
    assert [] in payload["members"] and [2, 3] in payload["members"]


def test_fam_transform(capsys):
    rc, out = run(capsys, "fam", "transform", "restrict", "--xi", "1",
                  "--window", "6", "--m", '{"kind":"arith","start":2,"step":2}')
    assert rc == 0 and [2, 4] in json.loads(out)["members"]
    rc, out = run(capsys, "fam", "transform", "image", "--xi", "1",
                  "--window", "6", "--m", '{"kind":"arith","start":2,"step":2}')
    assert rc == 0 and [2, 4] not in json.loads(out)["members"]


def test_fam_bad_set(capsys):
    assert dispatch(["fam", "member", "--xi", "1", "--set", "[3,2]"]) == 2
    assert dispatch(["fam", "member", "--xi", "1", "--set", "oops"]) == 2


# -- ra -------------------------------------------------------------------

def test_ra_vec(capsys):
    rc, out = run(capsys, "ra", "vec", "--xi", "w", "--m", NATS, "--n", "1")
    assert rc == 0 and json.loads(out) == {"entries": [[1, "1/1"]]}
    rc, out = run(capsys, "ra", "vec", "--xi", "1", "--m", NATS, "--n", "2")
    assert json.loads(out) == {"entries": [[2, "1/2"], [3, "1/2"]]}


def test_ra_vec_cap():
    # fresh process: the in-process stream cache would otherwise already
    # hold the vector from earlier tests and never consult the cap
    proc = subprocess.run(
        [sys.executable, "-m", "schreier.cli", "ra", "vec", "--xi", "2",
         "--m", NATS, "--n", "3", "--cap", "100"],
        capture_output=True, text=True)
    assert proc.returncode == 3
    assert "cap" in proc.stderr


def test_ra_growth(capsys):
    rc, out = run(capsys, "ra", "growth", "--xi", "1", "--n", "6")
    assert rc == 0 and json.loads(out) == [1, 3, 7, 15, 31, 63]


def test_ra_witness(capsys):
    rc, out = run(capsys, "ra", "witness", "--xi", "1", "--m", WORKED,
                  "--p", WORKED, "--n", "1")
    payload = json.loads(out)
    assert rc == 0 and payload["value"] == "1/2"


def test_ra_hull(capsys):
    rc, out = run(capsys, "ra", "hull", "--zeta", "1", "--xi", "0",
                  "--m", NATS, "--l", NATS, "--n", "2")
    payload = json.loads(out)
    assert rc == 0 and payload["residual_bound"] == "0/1"
    assert payload["combination"] == {"2": "1/2", "3": "1/2"}


def test_ra_props(capsys):
    rc, out = run(capsys, "ra", "props", "--xi", "1", "--m", NATS,
                  "--depth", "3")
    payload = json.loads(out)
    assert rc == 0 and payload["passed"]


def test_ra_props_csv(capsys):
    rc, out = run(capsys, "ra", "props", "--xi", "1", "--m", NATS,
                  "--depth", "3", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rc == 0
    assert rows[0] == ["xi", "base", "property", "n", "status", "detail"]
    assert all(len(r) == 6 for r in rows[1:])
    assert all(r[4] == "pass" for r in rows[1:])


# -- idx ------------------------------------------------------------------

def test_idx_derive_and_window(capsys):
    rc, out = run(capsys, "idx", "derive", "--xi", "1", "--window", "6")
    members = {tuple(m) for m in json.loads(out)["members"]}
    assert rc == 0
    assert members == {()} | {
        tuple(fs) for fs in members if fs and len(fs) < fs[0]}
    rc, out = run(capsys, "idx", "window", "--xi", "1", "--window", "6")
    assert rc == 0 and json.loads(out)["iterations"] == 6


def test_idx_embed(capsys):
    rc, out = run(capsys, "idx", "embed", "--zeta", "1", "--xi", "2",
                  "--window", "12", "--m",
                  '{"kind":"arith","start":2,"step":2}')
    assert rc == 0 and json.loads(out)["ok"]
    rc, out = run(capsys, "idx", "embed", "--zeta", "2", "--xi", "1",
                  "--window", "12", "--m", NATS)
    payload = json.loads(out)
    assert rc == 1 and not payload["ok"] and payload["blocking"]


def test_idx_find(capsys):
    rc, out = run(capsys, "idx", "find", "--zeta", "1", "--xi", "2",
                  "--window", "8")
    assert rc == 0 and len(json.loads(out)["prefix"]) == 8
    rc, out = run(capsys, "idx", "find", "--zeta", "2", "--xi", "1",
                  "--window", "6")
    assert rc == 1 and json.loads(out)["blocking"]


def test_idx_large(capsys):
    rc, out = run(capsys, "idx", "large", "--xi", "1", "--window", "6",
                  "--m", NATS, "--eps", "1/2", "--depth", "2")
    payload = json.loads(out)
    assert rc == 0 and payload["pass"]
    assert all(row["value"] == "1/1" for row in payload["rows"])


def test_idx_fdelta(capsys):
    rc, out = run(capsys, "idx", "fdelta", "--functionals",
                  '[{"1": "1", "2": "1/2", "3": "1/4"}]',
                  "--delta", "1/3", "--window", "6")
    members = [tuple(m) for m in json.loads(out)["members"]]
    assert rc == 0 and sorted(members) == [(), (1,), (1, 2), (2,)]


# -- sum ------------------------------------------------------------------

def test_sum_cesaro_csv(capsys):
    rc, out = run(capsys, "sum", "cesaro", "--xi", "0", "--l", NATS,
                  "--horizon", "5", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rc == 0
    assert rows[0] == ["model", "xi", "L", "n", "norm", "decimal"]
    assert len(rows) == 6
    assert rows[5][3:5] == ["5", "3/5"]


def test_sum_trend(capsys):
    rc, out = run(capsys, "sum", "trend", "--xi", "1", "--l", NATS)
    assert rc == 0 and json.loads(out)["decision"] == "summable-trend"


def test_sum_spread(capsys):
    rc, out = run(capsys, "sum", "spread", "--xi", "1", "--m", NATS,
                  "--eps", "1", "--window", "6")
    assert rc == 0 and json.loads(out)["pass"]
    rc, out = run(capsys, "sum", "spread", "--xi", "1", "--m", NATS,
                  "--model", "sup", "--eps", "1/2", "--window", "6")
    assert rc == 1 and not json.loads(out)["pass"]


def test_sum_reduce(capsys):
    rc, out = run(capsys, "sum", "reduce", "--m", NATS, "--delta", "1/2",
                  "--eps", "1/2")
    assert rc == 0 and json.loads(out)["pass"]


def test_sum_bsprobe(capsys):
    rc, out = run(capsys, "sum", "bsprobe", "--xi", "1", "--m", NATS)
    payload = json.loads(out)
    assert rc == 0
    assert payload["bracket"] == {"above": "1", "at-most-successor-of": "1"}


# -- cu -------------------------------------------------------------------

def test_cu_floor(capsys):
    rc, out = run(capsys, "cu", "floor", "--k", "2")
    assert (rc, out) == (0, "1/512\n")


def test_cu_search(capsys):
    rc, out = run(capsys, "cu", "search", "--delta", "1/2", "--window", "6")
    payload = json.loads(out)
    assert rc == 0 and payload["mode"] == "exhaustive"


def test_cu_freeset(capsys):
    rc, out = run(capsys, "cu", "freeset", "--functionals",
                  '[{"2": "1", "3": "1"}, {"2": "1"}, {"3": "1"}]',
                  "--prefix", "[2,3]", "--delta", "1/2", "--eps", "1/2")
    assert rc == 0 and json.loads(out)["pass"]
    rc, out = run(capsys, "cu", "freeset", "--functionals",
                  '[{"1": "1", "2": "1"}]',
                  "--prefix", "[1,2,3]", "--delta", "1/2", "--eps", "1/2")
    assert rc == 1 and not json.loads(out)["pass"]


def test_cu_suppress(capsys):
    rc, out = run(capsys, "cu", "suppress", "--xi", "1", "--window", "6")
    assert rc == 0 and json.loads(out)["pass"]


# -- contract -------------------------------------------------------------

def test_usage_errors(capsys):
    assert dispatch([]) == 2
    assert dispatch(["sum", "cesaro", "--xi", "1", "--l", NATS,
                     "--model", "bogus"]) == 2
    assert dispatch(["ra", "vec", "--xi", "1", "--m", "not json",
                     "--n", "1"]) == 2


def test_out_flag_and_roundtrip(tmp_path, capsys):
    target = tmp_path / "vec.json"
    rc = dispatch(["ra", "vec", "--xi", "1", "--m", NATS, "--n", "3",
                   "--out", str(target)])
    assert rc == 0
    payload = json.loads(target.read_text())
    assert payload["entries"] == [[n, "1/4"] for n in (4, 5, 6, 7)]


def test_determinism(capsys):
    first = run(capsys, "sum", "spread", "--xi", "1", "--m", NATS,
                "--eps", "1", "--window", "5")
    second = run(capsys, "sum", "spread", "--xi", "1", "--m", NATS,
                 "--eps", "1", "--window", "5")
    assert first == second


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "schreier.cli", "ord", "cmp", "w", "w"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "equal\n"
