import io
import json
import subprocess
import sys

import pytest

from qdfrac import cli, sweep
from qdfrac.numeval import BigReal
from qdfrac.sweep import CheckResult


def run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), stream=buf)
    return code, buf.getvalue()


def test_cfcoeffs_table():
    code, out = run("cfcoeffs", "--k", "3")
    assert code == 0
    assert out.strip() == "d = 1 1 1 2 2 3 3"


def test_identities_pass():
    code, out = run("identities", "--kmax", "6")
    assert code == 0
    assert out.strip().endswith("all identities hold exactly")


def test_identities_failure_exits_one(monkeypatch):
    def broken(kmax):
        yield CheckResult("fake family", False, 1, "forced")

    monkeypatch.setattr(cli, "run_identity_sweep", broken)
    code, out = run("identities")
    assert code == 1
    assert "FAIL" in out


def test_e1_three_methods_agree():
    code, out = run("e1", "--x", "1", "--prec", "128")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    values = {line.split()[1] for line in lines}
    assert len(values) == 1
    assert [line.split()[2] for line in lines] == ["method=series", "method=cf", "method=quadrature"]


def test_json_round_trip():
    code, out = run("e1", "--x", "3/2", "--prec", "96", "--output", "json")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(records) == 3
    for rec in records:
        v = BigReal(rec["value"], 96)
        assert str(v) == rec["value"]
        assert rec["prec_bits"] == 96
        float(rec["est_err"])


def test_qd_json_exact_rationals():
    code, out = run("qd", "--depth", "2", "--width", "1", "--output", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [(r["k"], r["n"]) for r in recs] == sorted((r["k"], r["n"]) for r in recs)
    assert recs[0] == {"k": 0, "n": 0, "e": "0", "q": "-1"}


def test_hankel_and_convergents():
    code, out = run("hankel", "--kmax", "4")
    assert code == 0 and "144" in out
    code, out = run("convergents", "--n", "4")
    assert code == 0 and "MISMATCH" not in out


def test_fm_table():
    code, out = run("fm", "--x", "1000", "--terms", "2", "--output", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["j"] for r in recs] == [1, 2, 3, 4]
    assert all(float(r["deviation"]) < 1e-2 for r in recs)


def test_lprime(tmp_path):
    code, out = run("lprime", "--terms", "100", "--output", "json")
    rec = json.loads(out)
    assert code == 0
    assert rec["curve"] == "37a" and rec["T"] == 100
    assert rec["lprime"].startswith("0.30599977383405")


def test_usage_errors():
    assert run("nosuch")[0] == 2
    assert run("e1")[0] == 2
    assert run("e1", "--x", "-1")[0] == 2
    assert run("lprime", "--curve", "/nonexistent.curve")[0] == 2


def test_env_precision(monkeypatch):
    monkeypatch.setenv("QDFRAC_PREC_BITS", "64")
    code, out = run("e1", "--x", "2", "--output", "json")
    assert json.loads(out.splitlines()[0])["prec_bits"] == 64


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qdfrac", "cfcoeffs", "--k", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "d = 1 1 1 2 2"


def test_sweep_families_all_pass():
    results = list(sweep.run_identity_sweep(5))
    assert len(results) == len(sweep.CHECKS)
    assert all(r.ok and r.checked > 0 for r in results), [r for r in results if not r.ok]
    with pytest.raises(ValueError):
        list(sweep.run_identity_sweep(1))
