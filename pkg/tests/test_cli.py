import subprocess
import sys

import pytest

BASE = [sys.executable, "-m", "sorank.cli"]


def run_cli(*args, stdin=""):
    return subprocess.run(
        BASE + list(args), input=stdin, capture_output=True, text=True, timeout=120
    )


def test_construct_verify_roundtrip():
    out = run_cli("construct", "--q", "2", "--n", "2", "--m", "4", "--k", "3", "--seed", "1")
    assert out.returncode == 0
    assert out.stdout.startswith("repr=matrix q=2 m=4 n=2 k=3\n")
    ver = run_cli("verify", stdin=out.stdout)
    assert ver.returncode == 0
    assert ver.stdout == "OK\n"


def test_construct_vector_repr():
    out = run_cli("construct", "--repr", "vector", "--q", "3", "--n", "5", "--m", "2", "--k", "2")
    assert out.returncode == 0
    assert out.stdout.startswith("repr=vector q=3 m=2 n=5 k=2\n")
    assert run_cli("verify", stdin=out.stdout).returncode == 0


def test_construct_is_deterministic():
    a = run_cli("construct", "--q", "2", "--n", "2", "--m", "4", "--k", "3", "--seed", "9")
    b = run_cli("construct", "--q", "2", "--n", "2", "--m", "4", "--k", "3", "--seed", "9")
    assert a.stdout == b.stdout


def test_verify_flags_violations():
    bad = "repr=matrix q=3 m=2 n=2 k=1\n1 0 0 1\n"  # identity, <I,I> = 2 != 0
    out = run_cli("verify", stdin=bad)
    assert out.returncode == 1
    assert out.stdout.startswith("violated:")


def test_dual_pipeline():
    code = run_cli("construct", "--q", "2", "--n", "2", "--m", "2", "--k", "1").stdout
    d = run_cli("dual", stdin=code)
    assert d.returncode == 0
    assert "k=3" in d.stdout.splitlines()[0]
    dd = run_cli("dual", stdin=d.stdout)
    assert "k=1" in dd.stdout.splitlines()[0]


def test_ball_exact_and_bound():
    out = run_cli("ball", "--q", "2", "--n", "2", "--m", "2", "--r", "1", "--exact")
    assert out.returncode == 0 and out.stdout == "10\n"
    out = run_cli("ball", "--q", "2", "--n", "2", "--m", "2", "--tau", "0.5", "--bound")
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0] == "tau,r,log_q_exact,log_q_bound"
    tau, r, ex, bd = lines[1].split(",")
    assert float(ex) <= float(bd)


def test_roots_command():
    out = run_cli("roots", "--q", "5", "--nvars", "2", "--coeffs", "1,0,1", "--sample", "--nonzero")
    assert out.returncode == 0
    got = dict(ln.split("=", 1) for ln in out.stdout.splitlines())
    assert got["rank"] == "2"
    assert got["brute"] == "9"
    assert got["formula"] == "1,9"
    x = [int(v) for v in got["root"].split()]
    assert (x[0] ** 2 + x[1] ** 2) % 5 == 0 and any(x)


def test_selfdual_basis_command():
    out = run_cli("selfdual-basis", "--q", "2", "--m", "2")
    assert out.returncode == 0
    assert sorted(out.stdout.split()) == ["2", "3"]
    out = run_cli("selfdual-basis", "--q", "3", "--m", "2")
    assert out.returncode == 0 and out.stdout == "absent\n"


def test_error_reporting_and_exit_codes():
    out = run_cli("construct", "--q", "6", "--n", "2", "--m", "2", "--k", "1")
    assert out.returncode == 1
    assert out.stderr.startswith("error: E_PARAM:")
    assert out.stdout == ""
    usage = run_cli("nonsense")
    assert usage.returncode == 2


def test_experiment_command(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("q=2\nn=2\nm=4\ntau=0.5\nepsilon=0.1\ntrials=5\nseed=42\n# comment\n")
    hist = tmp_path / "hist.csv"
    out = run_cli("experiment", "--config", str(cfg), "--emit-hist", str(hist))
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0] == "trial,list_size,center_rank,code_seed"
    assert lines[-1].startswith("# summary ")
    assert "resolved config" in out.stderr and "wall time" in out.stderr
    assert hist.read_text().startswith("list_size,count\n")
    again = run_cli("experiment", "--config", str(cfg))
    assert again.stdout == out.stdout


def test_experiment_config_errors(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("q=2\nn=2\nm=4\ntau=0.5\nepsilon=0.1\ntrials=5\nbogus=1\n")
    out = run_cli("experiment", "--config", str(cfg))
    assert out.returncode == 1
    assert out.stderr.startswith("error: E_FORMAT:")
    cfg.write_text("q=2\nn=2\n")
    out = run_cli("experiment", "--config", str(cfg))
    assert out.returncode == 1 and "missing" in out.stderr
    out = run_cli("experiment", "--config", str(tmp_path / "absent.cfg"))
    assert out.returncode == 1 and out.stderr.startswith("error: E_FORMAT:")
