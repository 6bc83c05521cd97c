import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from codecensus import asymptotics as asy
from codecensus.cli import Report, render, run
from codecensus.combinatorics import qbinom, sum_qbinom
from codecensus.census import census
from codecensus.constants import euler_Kq
from codecensus.distributions import convergence_report, sample, theta_distribution
from codecensus.field import field_of_order


def call(*argv):
    out, err = io.BytesIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue().decode(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_qbinom_and_sum():
    assert call("qbinom", "--n", 4, "--k", 2, "--q", 2) == (0, "35\n", "")
    code, out, _ = call("qbinom", "--n", 30, "--k", 11, "--q", 9, "--format", "csv")
    assert rows(out) == [{"n": "30", "k": "11", "q": "9", "value": str(qbinom(30, 11, 9))}]
    assert call("sum", "--n", 12, "--q", 3)[1] == f"{sum_qbinom(12, 3)}\n"


def test_census_both():
    code, out, _ = call("census", "--group", "perm", "--n", 3, "--k", 1, "--q", 2, "--method", "both", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "group,n,k,q,method,count,elapsed_ms,agree"
    got = rows(out)
    assert [r["method"] for r in got] == ["burnside", "orbits", "both"]
    assert {r["count"] for r in got} == {"3"} and {r["agree"] for r in got} == {"true"}


@pytest.mark.parametrize("group,kind", [("perm", "permutation"), ("mono", "monomial"), ("semi", "semilinear")])
def test_census_matches_library(group, kind):
    f = field_of_order(4)
    code, out, _ = call("census", "--group", group, "--n", 4, "--k", 2, "--q", 4, "--format", "csv")
    assert out.splitlines()[0] == "group,n,k,q,method,count,elapsed_ms"
    assert int(rows(out)[0]["count"]) == census(kind, f, 4, 2).count
    code, out, _ = call("census", "--group", group, "--n", 3, "--all", "--q", 3, "--format", "json")
    row = json.loads(out)["rows"][0]
    assert row["k"] == "all" and row["count"] == census(kind, field_of_order(3), 3, None).count


def test_census_timing_flag():
    _, out, _ = call("census", "--group", "perm", "--n", 3, "--k", 1, "--format", "csv")
    assert rows(out)[0]["elapsed_ms"] == ""
    _, out, _ = call("census", "--group", "perm", "--n", 3, "--k", 1, "--format", "csv", "--timing")
    assert rows(out)[0]["elapsed_ms"].isdigit()


def test_constants_contain_library_values():
    _, out, _ = call("constants", "--q", 3, "--format", "json", "--precision", 30)
    data = json.loads(out)
    assert data["precision"] == 30
    K = {r["name"]: r for r in data["rows"]}["K_q"]
    with mp.workdps(40):
        assert mpf(K["lo"]) <= euler_Kq(3).mid + mpf("1e-29")
        assert abs(mpf(K["hi"]) - euler_Kq(3).mid) < mpf("1e-28")


def test_estimate_commands():
    _, out, _ = call("estimate", "--what", "qbinom", "--n", 10, "--k", 5, "--format", "csv", "--precision", 20)
    r = rows(out)[0]
    assert int(r["exact"]) == qbinom(10, 5, 2)
    with mp.workdps(30):
        assert abs(mpf(r["estimate"]) - asy.estimate_qbinom(10, 5, 2).value()) < mpf("1e-10")
    _, out, _ = call("estimate", "--what", "ratio", "--n", 6, "--k", 2, "--format", "csv")
    assert rows(out)[0]["exact"] == "7/15"
    _, out, _ = call("estimate", "--what", "central", "--n", 6, "--format", "csv")
    assert rows(out)[0]["exact"] == "1395/512"
    for what in ("classes", "total", "S"):
        code, out, _ = call("estimate", "--what", what, "--n", 8, "--k", 3, "--q", 4, "--group", "semi")
        assert code == 0
    assert call("estimate", "--what", "classes", "--n", 8)[0] == 1


def test_converge_matches_library():
    _, out, _ = call("converge", "--parity", "odd", "--m-min", 3, "--m-max", 6, "--format", "csv", "--precision", 20)
    assert out.splitlines()[0] == "m,exact_gap,tv_lo,tv_hi"
    lib = convergence_report("odd", 2, range(3, 7), digits=20)
    for r, ref in zip(rows(out), lib):
        assert int(r["m"]) == ref.m
        with mp.workdps(30):
            assert abs(mpf(r["tv_hi"]) - ref.tv.hi) < mpf("1e-18")


def test_dist():
    code, out, _ = call("dist", "--variant", "theta3", "--nome", "0.5", "--op", "pmf", "--k", 0, "--precision", 12)
    assert (code, out) == (0, "0.469718024141\n")
    code, out, _ = call("dist", "--variant", "theta2", "--op", "pmf", "--k=-1/2", "--format", "csv")
    assert rows(out)[0]["k"] == "-1/2"
    code, out, _ = call("dist", "--variant", "theta3", "--op", "sample", "--count", 50, "--seed", 9, "--format", "csv")
    lib = sample(theta_distribution("theta3", Fraction(1, 2)), 9, 50)
    assert [Fraction(r["value"]) for r in rows(out)] == [Fraction(x) for x in lib]
    assert call("dist", "--variant", "theta3", "--op", "pmf", "--k", "1/2")[0] == 1
    assert call("dist", "--variant", "theta3", "--nome", "2", "--k", "0")[0] == 1


def test_star():
    assert call("star", "--family", "half-floor", "--r", 2)[1] == "Satisfied\n"
    assert call("star", "--family", "half-ceil", "--r", 1)[1] == "Satisfied\n"
    assert call("star", "--family", "constant", "--alpha", 3)[1] == "NotSatisfied\n"
    assert call("star", "--family", "linear", "--lam", "1/4")[1] == "NotSatisfied\n"
    assert call("star", "--family", "power-log", "--alpha", "1/3")[1] == "Satisfied\n"
    assert call("star", "--family", "power-log", "--alpha", "1/2")[1] == "UnknownDependsOnConstants\n"
    assert call("star", "--family", "linear", "--lam", "1/2")[0] == 1


def test_errors_and_exit_codes():
    code, out, err = call("qbinom", "--n", 4, "--k", 2, "--q", 6)
    assert code == 1 and out == "" and err.startswith("error: validation:") and err.count("\n") == 1
    assert call("bogus")[0] == 1
    assert call("qbinom", "--n", 4, "--k", 2, "--precision", 9)[0] == 1
    assert call("census", "--group", "perm", "--n", 3, "--k", 1, "--threads", 0)[0] == 1
    assert call("census", "--group", "perm", "--n", 3)[0] == 1
    code, _, err = call("census", "--group", "semi", "--n", 6, "--k", 3, "--q", 4, "--work-ceiling", 10**6)
    assert code == 2 and err.startswith("error: ceiling:")


def test_out_file(tmp_path):
    path = tmp_path / "c.csv"
    code, out, _ = call("converge", "--parity", "even", "--m-max", 3, "--format", "csv", "--out", path)
    assert code == 0 and out == ""
    assert path.read_bytes().startswith(b"m,exact_gap,tv_lo,tv_hi\r\n")


def test_render_formats():
    rep = Report("x", ["a", "b", "c"], [{"a": Fraction(3, 4), "b": 'he said "hi", twice', "c": None},
                                        {"a": 10**40, "b": mpf("0.5"), "c": True}], precision=10)
    parsed = list(csv.reader(io.StringIO(render(rep, "csv").decode())))
    assert parsed == [["a", "b", "c"], ["3/4", 'he said "hi", twice', ""], [str(10**40), "0.5", "true"]]
    assert b'"he said ""hi"", twice"' in render(rep, "csv")
    obj = json.loads(render(rep, "json"))
    assert obj == rep.to_json_obj()
    assert json.loads(json.dumps(obj, sort_keys=True, indent=2)) == obj
    assert render(rep, "json") == (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()
    assert obj["precision"] == 10 and obj["rows"][1]["a"] == 10**40
    table = render(rep, "table").decode().splitlines()
    assert table[0].split() == ["a", "b", "c"]


def test_byte_identical_runs():
    argv = ["census", "--group", "semi", "--n", 4, "--k", 2, "--q", 4, "--format", "json"]
    assert call(*argv) == call(*argv)
    counts = {json.loads(call(*argv, "--threads", t)[1])["rows"][0]["count"] for t in (1, 2, 8)}
    assert len(counts) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "codecensus", "qbinom", "--n", "5", "--k", "2", "--q", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1210\n"
    res = subprocess.run([sys.executable, "-m", "codecensus", "sum", "--n", "3", "--q", "10"],
                         capture_output=True, text=True)
    assert res.returncode == 1 and res.stderr.startswith("error: validation:")
