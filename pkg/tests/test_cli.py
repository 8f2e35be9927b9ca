import csv
import json

import numpy as np
import pytest

from isospec import checks
from isospec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# verify

def test_verify_theorem1_reports(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    code, out, _ = run(capsys, "verify", "theorem1", "--output-dir", str(out_dir),
                       "--formats", "json,csv,text")
    assert code == 0
    assert "suite theorem1" in out

    payload = json.loads((out_dir / "theorem1.json").read_text())
    assert payload["schema"] == 1
    assert payload["suite"] == "theorem1"
    ids = [r["check_id"] for r in payload["records"]]
    assert ids == list(checks.suite_check_ids("theorem1"))
    statuses = {r["status"] for r in payload["records"]}
    assert statuses <= {"pass", "assumed"}

    with (out_dir / "theorem1.csv").open() as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["check_id", "claim", "expected", "computed",
                       "abs_err", "tol", "status", "detail"]
    assert all(len(row) == 8 for row in rows)
    assert len(rows) == 1 + len(ids)

    text = (out_dir / "theorem1.txt").read_text()
    assert text.splitlines()[0].startswith("suite theorem1")


def test_verify_dry_run_lists_ids(capsys):
    code, out, _ = run(capsys, "verify", "all", "--dry-run")
    assert code == 0
    listed = out.split()
    assert listed == list(checks.suite_check_ids("all"))


def test_verify_exit_one_on_failure(tmp_path, capsys):
    cfg = tmp_path / "tight.cfg"
    cfg.write_text("tol.k1-closed-form = 1e-18\n")
    code, out, _ = run(capsys, "verify", "theorem1", "--config", str(cfg),
                       "--output-dir", str(tmp_path / "r"))
    assert code == 1
    assert "fail" in out


def test_verify_exit_two_on_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("tol.unknown-check = 1e-9\n")
    code, _, err = run(capsys, "verify", "theorem1", "--config", str(cfg))
    assert code == 2
    assert "config error" in err


def test_verify_exit_two_on_bad_points(capsys):
    code, _, err = run(capsys, "verify", "theorem1", "--points", "10")
    assert code == 2
    assert "config error" in err


def test_verify_reports_are_deterministic(tmp_path, capsys):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert run(capsys, "verify", "berger", "--output-dir", str(a))[0] == 0
    assert run(capsys, "verify", "berger", "--output-dir", str(b))[0] == 0
    assert (a / "berger.json").read_bytes() == (b / "berger.json").read_bytes()


def test_verify_g6_shape_scan(capsys):
    code, out, _ = run(capsys, "verify", "g6-shape", "--which", "m1", "--grid", "8")
    assert code == 0
    report = json.loads(out)
    assert report["which"] == "m1"
    assert report["grid"] == 8
    assert report["passed"]
    assert report["max_eigenvalue_deviation"] < 1e-9
    assert report["max_residual"] < 1e-9
    assert set(report["residual_argmax"]) == {"t", "s"}


# ---------------------------------------------------------------------------
# spectrum

def test_spectrum_sphere_text(capsys):
    code, out, _ = run(capsys, "spectrum", "sphere", "--dim", "13", "--cutoff", "3")
    assert code == 0
    assert "sphere(n=13, r2=1)" in out
    assert "28" in out and "104" in out


def test_spectrum_sphere_json_quotient(capsys):
    code, out, _ = run(capsys, "spectrum", "sphere", "--dim", "2",
                       "--radius", "sqrt(3/4)", "--quotient", "--cutoff", "4",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    first = payload["rows"][1]
    assert first["eigenvalue"] == "8"
    assert first["multiplicity"] == 5
    assert first["provenance"] == "harmonic degree 2"


def test_spectrum_sphere_rational_radius(capsys):
    code, out, _ = run(capsys, "spectrum", "sphere", "--dim", "1",
                       "--radius", "1/2", "--cutoff", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"][1]["eigenvalue"] == "4"


def test_spectrum_berger_table(capsys):
    code, out, _ = run(capsys, "spectrum", "berger", "--cutoff", "6",
                       "--t-squared", "2")
    assert code == 0
    assert "base 2 + fiber 2/t2" in out
    assert "undetermined" in out
    lines = [l for l in out.splitlines() if "base 2 + fiber 2/t2" in l]
    assert lines[0].split()[0] == "3"


def test_spectrum_csv_to_file(tmp_path, capsys):
    target = tmp_path / "levels.csv"
    code, _, _ = run(capsys, "spectrum", "berger", "--cutoff", "5",
                     "--format", "csv", "--output", str(target))
    assert code == 0
    rows = target.read_text().splitlines()
    assert rows[0] == "eigenvalue,multiplicity,provenance"
    assert rows[1].startswith("0.0,1,")


# ---------------------------------------------------------------------------
# estimator commands

def test_estimate_lambda1_with_cache(tmp_path, capsys):
    args = ("estimate-lambda1", "--manifold", "s2", "--points", "800",
            "--seed", "3", "--output-dir", str(tmp_path))
    code, out, _ = run(capsys, *args)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["multiplicity"] == 3
    assert abs(payload["lambda1"] - 2.0) / 2.0 < 0.15
    cache = list((tmp_path / "cache").glob("s2-n800-seed3.csv"))
    assert len(cache) == 1

    code2, out2, _ = run(capsys, *args)
    assert code2 == 0
    assert out2 == out  # reloaded from cache, bit-identical


def test_estimate_lambda1_error_exit(tmp_path, capsys):
    code, _, err = run(capsys, "estimate-lambda1", "--manifold", "m1-fkm-443",
                       "--points", "400", "--output-dir", str(tmp_path))
    assert code == 1
    assert "UnsupportedDimension" in err


def test_export_points(tmp_path, capsys):
    target = tmp_path / "cloud.csv"
    code, out, _ = run(capsys, "export-points", "--manifold", "m1-otfkm-11",
                       "--points", "150", "--seed", "2", "--output", str(target))
    assert code == 0
    assert str(target) in out
    table = np.loadtxt(target, delimiter=",")
    assert table.shape == (150, 7)  # six coordinates plus constraint residual
    assert np.max(table[:, -1]) < 1e-12
