import io
import json
import subprocess
import sys

import numpy as np
import pytest

from lconvex import cli
from lconvex.serialize import CSV_FIELDS, trace_from_csv


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_run_csv_roundtrip():
    code, text = run("run", "--x0", "0.25", "--max-iters", "4", "--f-tol", "0")
    assert code == cli.EXIT_OK
    assert text.splitlines()[0] == ",".join(CSV_FIELDS)
    tr = trace_from_csv(text)
    np.testing.assert_allclose(np.abs(tr.xs), [0.25, 0.728, 0.938, 0.985, 0.996], atol=5e-3)
    assert [r.k for r in tr] == list(range(5))


def test_run_is_byte_deterministic():
    args = ("run", "--method", "mirror", "--x0", "1.75", "--schedule", "constant:0.1")
    assert run(*args) == run(*args)


def test_run_json_mirror_from_minimizer():
    code, text = run("run", "--method", "mirror", "--x0", "1", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert len(doc["records"]) == 1
    assert doc["stop_reason"] == "stationary"
    assert doc["x0"] == 1.0


def test_degenerate_start_exit_code():
    assert run("run", "--x0", "0")[0] == cli.EXIT_DEGENERATE


@pytest.mark.parametrize(
    "argv",
    [
        ("reproduce", "--table", "9"),
        ("run",),
        ("run", "--x0", "7"),
        ("run", "--x0", "abc"),
        ("run", "--x0", "1", "--schedule", "linear"),
        ("run", "--x0", "1", "--domain=3:1"),
        ("divergence", "--y", "0.5", "--samples", "1"),
        ("bogus",),
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == cli.EXIT_USAGE


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# table 2 setup\nx0 = 0.25\nschedule = constant:0.1\nmax_iters = 10\nf-tol = 0\n")
    code, text = run("run", "--config", str(cfg))
    assert code == 0
    tr = trace_from_csv(text)
    assert len(tr) == 11
    assert abs(tr.xs[1] - 0.364) < 5e-3
    # flags win over the file
    code, text = run("run", "--config", str(cfg), "--max-iters", "2")
    assert len(trace_from_csv(text)) == 3


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("x0 = 1\nstep = 3\n")
    assert run("run", "--config", str(cfg))[0] == cli.EXIT_USAGE
    assert run("run", "--config", str(tmp_path / "missing.cfg"))[0] == cli.EXIT_USAGE


def test_schedule_file(tmp_path):
    steps = tmp_path / "steps.txt"
    steps.write_text("1.0, 0.5\n")
    code, text = run("run", "--x0", "0.25", "--schedule", f"file:{steps}", "--f-tol", "0")
    assert code == 0
    assert len(trace_from_csv(text)) == 3


@pytest.mark.parametrize("y", [0.5, -0.5])
def test_divergence_dump(y):
    code, text = run("divergence", "--y", str(y), "--samples", "5")
    assert code == 0
    rows = [tuple(map(float, line.split(","))) for line in text.splitlines()[1:]]
    xs = np.array([r[0] for r in rows])
    np.testing.assert_array_equal(xs, [-2, -1, 0, 1, 2])
    # D(x, +-1/2) = x^2 - |x| + 1/4
    np.testing.assert_allclose([r[1] for r in rows], xs**2 - np.abs(xs) + 0.25, atol=1e-14)


def test_divergence_at_zero_is_degenerate():
    assert run("divergence", "--y", "0")[0] == cli.EXIT_DEGENERATE


def test_check_list():
    code, text = run("check", "--list")
    assert code == 0
    names = text.split()
    assert "triangle-identity" in names and "reference-tables" in names


def test_check_negative_scale_fails(monkeypatch):
    monkeypatch.setenv(cli.TOL_SCALE_ENV, "-1")
    code, text = run("check")
    assert code == cli.EXIT_FAIL
    assert "FAIL" in text


def test_check_bad_scale(monkeypatch):
    monkeypatch.setenv(cli.TOL_SCALE_ENV, "lots")
    assert run("check")[0] == cli.EXIT_USAGE


@pytest.mark.parametrize("table", [1, 3])
def test_reproduce(table):
    code, text = run("reproduce", "--table", str(table))
    assert code == 0
    assert text.rstrip().splitlines()[-1].startswith("PASS")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lconvex", "divergence", "--y", "1", "--samples", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "x,D"
