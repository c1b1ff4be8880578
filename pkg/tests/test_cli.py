import csv
import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qdelta.cli import main, parse_complex
from qdelta.deltarep import CSV_COLUMNS

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "docs" / "golden"

# golden file -> argv; set QDELTA_REGEN_GOLDEN=1 to rewrite them
GOLDEN = {
    "eval.json": ["eval", "--fn", "fq", "--q", "1.5", "--k", "0+1i", "--format", "json"],
    "pair.json": ["pair", "--mode", "contour", "--q", "1.5", "--testfn", "gauss:a=1", "--zeta", "1"],
    "sweep.csv": ["sweep", "--q", "1.5", "--testfn", "gauss:a=1"],
    "sweep.json": ["sweep", "--q", "1.5", "--testfn", "gauss:a=1", "--format", "json"],
    "contour-check.json": ["contour-check", "--q", "1.5"],
    "superstat.json": ["superstat", "--n", "2", "--b", "1", "--emax", "10", "--npoints", "11"],
    "superstat-mc.json": ["superstat", "--mc", "--n", "2", "--b", "1", "--E", "1",
                          "--samples", "1000000", "--seed", "7"],
    "entropy.json": ["entropy", "--density", "gauss:sigma=1", "--q", "1.5"],
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def close(a, b, rel=1e-9, abs_=1e-12):
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(close(a[k], b[k], rel, abs_) for k in a)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(close(x, y, rel, abs_) for x, y in zip(a, b))
    if isinstance(a, (int, float)) and not isinstance(a, bool):
        return isinstance(b, (int, float)) and not isinstance(b, bool) and math.isclose(a, b, rel_tol=rel, abs_tol=abs_)
    return a == b


def csv_close(a, b):
    ra, rb = list(csv.reader(io.StringIO(a))), list(csv.reader(io.StringIO(b)))
    if len(ra) != len(rb) or ra[0] != rb[0]:
        return False
    for x, y in zip(ra[1:], rb[1:]):
        for u, v in zip(x, y):
            try:
                if not math.isclose(float(u), float(v), rel_tol=1e-9, abs_tol=1e-12):
                    return False
            except ValueError:
                if u != v:
                    return False
    return True


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name, capsys):
    code, out, _ = run(GOLDEN[name], capsys)
    assert code == 0
    path = GOLDEN_DIR / name
    if os.environ.get("QDELTA_REGEN_GOLDEN"):
        path.write_text(out)
    ref = path.read_text()
    if name.endswith(".json"):
        assert close(json.loads(ref), json.loads(out))
    else:
        assert csv_close(ref, out)


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_deterministic_output_file(name, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(GOLDEN[name] + ["--output", str(a)]) == 0
    assert main(GOLDEN[name] + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


class TestEval:
    def test_qexp(self, capsys):
        assert run(["eval", "--fn", "qexp", "--q", "1.5", "--x", "0"], capsys)[1] == "1\n"

    def test_qexp_list(self, capsys):
        out = run(["eval", "--fn", "qexp", "--q", "2", "--x=-1,0"], capsys)[1]
        assert out.split() == ["0.5", "1"]

    def test_ireg(self, capsys):
        out = run(["eval", "--fn", "ireg", "--q", "1.5", "--k", "0", "--eps", "0.1"], capsys)[1]
        assert float(out) == pytest.approx(40.0, rel=1e-15)
        out = run(["eval", "--fn", "ireg", "--q", "1.5", "--k", "0", "--eps", "0.1",
                   "--method", "quadrature"], capsys)[1]
        assert float(out) == pytest.approx(40.0, rel=1e-8)

    def test_fq(self, capsys):
        assert run(["eval", "--fn", "fq", "--q", "1.5", "--k", "0+1i"], capsys)[1] == "2+0i\n"
        out = run(["eval", "--fn", "fq", "--q", "1.5", "--k", "0+1i", "--method", "quadrature"], capsys)[1]
        assert parse_complex(out.strip()) == pytest.approx(2.0, rel=1e-8)

    def test_eq_and_qexpc(self, capsys):
        assert run(["eval", "--fn", "eq", "--q", "1.5", "--k", "i", "--x", "2"], capsys)[1] == "0.25+0i\n"
        out = run(["eval", "--fn", "qexpc", "--q", "1.5", "--z", "2i"], capsys)[1]
        assert abs(parse_complex(out.strip()) - 0.5j) < 1e-12

    def test_seventeen_digits(self, capsys):
        out = run(["eval", "--fn", "qexp", "--q", "1.5", "--x", "0.3"], capsys)[1].strip()
        from qdelta import q_exp
        v = q_exp(1.5, 0.3)
        assert out == format(v, ".17g") and float(out) == v  # round-trips exactly
        assert v == pytest.approx((1 - 0.5 * 0.3) ** -2, rel=1e-15)


def test_parse_complex():
    assert parse_complex("0+1i") == 1j
    assert parse_complex("-2-0.5i") == complex(-2, -0.5)
    assert parse_complex("3") == 3
    assert parse_complex("-i") == -1j
    assert parse_complex("1e-3+2e2i") == complex(1e-3, 2e2)


class TestPair:
    def test_contour(self, capsys):
        d = json.loads(run(["pair", "--mode", "contour", "--q", "1.5", "--zeta", "1"], capsys)[1])
        assert d["value"]["re"] == pytest.approx(4 * math.pi, rel=1e-10)
        assert d["expected"]["re"] == pytest.approx(4 * math.pi, rel=1e-15)

    def test_real(self, capsys):
        d = json.loads(run(["pair", "--mode", "real", "--q", "1.5", "--eps", "1e-4"], capsys)[1])
        assert d["abs_error"] / d["expected"]["re"] < 1e-3

    def test_phi0_zero(self, capsys):
        d = json.loads(run(["pair", "--mode", "real", "--q", "1.5", "--testfn", "gauss:a=1,poly=0,0,1",
                            "--eps", "1e-3"], capsys)[1])
        assert abs(d["value"]["re"]) < 10 * 1e-3

    def test_csv(self, capsys):
        out = run(["pair", "--q", "1.5", "--rep", "dirac", "--format", "csv"], capsys)[1]
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1 and parse_complex(rows[0]["value"]) == pytest.approx(1.0, rel=1e-10)


class TestSweep:
    def test_csv_schema(self, capsys):
        out = run(["sweep", "--q", "1.5", "--schedule", "1e-1,1e-2"], capsys)[1]
        rows = list(csv.reader(io.StringIO(out)))
        assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 3

    def test_json_schema(self, capsys):
        d = json.loads(run(["sweep", "--q", "1.9", "--schedule", "1e-2", "--format", "json"], capsys)[1])
        assert set(d) == {"q", "testfn", "limit", "slope", "rows"}
        assert d["slope"] is None and len(d["rows"]) == 1
        assert d["limit"] == pytest.approx(20 * math.pi, rel=1e-15)
        assert set(d["rows"][0]) == set(CSV_COLUMNS) | {"message"}

    def test_default(self, capsys):
        d = json.loads(run(["sweep", "--q", "1.5", "--format", "json"], capsys)[1])
        assert 0.8 <= d["slope"] <= 1.2
        assert d["rows"][-1]["abs_error"] / d["limit"] < 1e-3

    def test_mostly_failed_exit_3(self, capsys):
        code, out, err = run(["sweep", "--q", "1.5", "--schedule", "1e-1,1e-2,1e-3",
                              "--max-subdivisions", "1", "--abs-tol", "1e-15", "--rel-tol", "1e-15"], capsys)
        assert code == 3 and "converged" in err
        assert "false" in out


def test_contour_check(capsys):
    d = json.loads(run(["contour-check", "--q", "1.1", "--zetas", "0.5,1,2", "--poly", "3,2"], capsys)[1])
    assert d["passed"]
    assert d["summary"]["fq"]["zeta_spread"] < 1e-7
    assert len(d["rows"]) == 6


class TestSuperstat:
    def test_identity(self, capsys):
        d = json.loads(run(["superstat", "--n", "2", "--b", "1", "--emax", "10"], capsys)[1])
        assert d["max_dev"] < 1e-10 and d["passed"] and len(d["rows"]) == 101

    def test_emax_zero(self, capsys):
        d = json.loads(run(["superstat", "--n", "2", "--b", "1", "--emax", "0"], capsys)[1])
        assert d["passed"] and len(d["rows"]) == 1

    def test_mc(self, capsys):
        argv = ["superstat", "--mc", "--n", "2", "--b", "1", "--E", "1", "--samples", "100000", "--seed", "7"]
        a = run(argv, capsys)[1]
        assert a == run(argv, capsys)[1]
        d = json.loads(a)
        assert abs(d["estimate"] - 0.25) <= 4 * d["stderr"]

    def test_csv_rows(self, capsys):
        out = run(["superstat", "--n", "2", "--b", "1", "--emax", "1", "--npoints", "3",
                   "--format", "csv"], capsys)[1]
        rows = list(csv.DictReader(io.StringIO(out)))
        assert list(rows[0]) == ["E", "factor", "closed_form", "q_exponential"] and len(rows) == 3


class TestEntropy:
    def test_limit(self, capsys):
        d = json.loads(run(["entropy", "--density", "uniform:a=0,b=2"], capsys)[1])
        assert d["shannon"] == pytest.approx(math.log(2), rel=1e-13)
        assert d["limit_abs_error"] < 1e-6

    def test_maximality(self, capsys):
        d = json.loads(run(["entropy", "--maximality", "--q", "1.5"], capsys)[1])
        assert d["passed"] and all(r["delta"] <= 1e-10 for r in d["rows"])


@pytest.mark.parametrize("argv", [
    ["eval", "--fn", "qexp", "--q", "abc", "--x", "0"],
    ["eval", "--fn", "qexp", "--q", "1.5"],
    ["eval", "--fn", "fq", "--q", "1.5", "--k", "1"],
    ["eval", "--fn", "fq", "--q", "2.5", "--k", "1i"],
    ["eval", "--fn", "fq", "--q", "1.5", "--k", "1 + 1i"],
    ["eval", "--fn", "ireg", "--q", "1.5", "--k", "0", "--eps", "-1"],
    ["pair", "--mode", "real", "--q", "1.5"],
    ["pair", "--q", "1.5", "--zeta", "0"],
    ["pair", "--q", "1.5", "--testfn", "sech:a=1"],
    ["sweep", "--q", "1.5", "--schedule", "1e-3,1e-2"],
    ["superstat", "--n", "1", "--b", "1"],
    ["superstat", "--mc", "--n", "2", "--b", "1"],
    ["superstat", "--n", "2", "--b", "1", "--seed", "-1"],
    ["entropy", "--density", "weird:x=1"],
    ["entropy", "--maximality", "--q", "1.9"],
    ["eval", "--fn", "qexp", "--q", "nan", "--x", "0"],
    ["eval", "--fn", "qexp", "--q", "1.5", "--x", "0", "--abs-tol", "-1"],
    ["frobnicate"],
    [],
])
def test_validation_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == "" and err.startswith("error:")


def test_computation_exit_3(capsys):
    code, _, err = run(["pair", "--q", "1.5", "--max-subdivisions", "1", "--abs-tol", "1e-15",
                        "--rel-tol", "1e-15"], capsys)
    assert code == 3 and err.startswith("error:")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "qdelta", "eval", "--fn", "qexp", "--q", "1.5", "--x", "0"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout == "1\n"
