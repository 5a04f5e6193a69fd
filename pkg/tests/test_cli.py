import csv
import io
import json
import subprocess
import sys

import pytest

from secondform import report
from secondform.cli import main
from secondform.surfaces import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_sphere_json_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "--surface", "catalog:sphere?r=1", "--grid", "8x8", "--json")
    assert code == 0
    rep = report.Report.from_json(out)
    assert rep.to_json() == out.rstrip("\n")
    assert rep.classification["case"] == "II"
    assert set(json.loads(out)) == set(report.REPORT_KEYS)


def test_analyze_is_byte_stable(capsys):
    args = ("analyze", "--surface", "catalog:catenoid?c=1", "--grid", "6x6", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_analyze_csv_round_trips_floats(capsys):
    code, out, _ = run(capsys, "analyze", "--surface", "catalog:sphere?r=3", "--grid", "6x6", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    rep = report.analyze(catalog("sphere", r=3.0), 6, 6)
    assert float(rows[0]["lambda"]) == rep.classification["lambda"]
    assert rows[0]["case"] == "II"


def test_analyze_text_and_torus(capsys):
    code, out, _ = run(capsys, "analyze", "--surface", "catalog:torus", "--grid", "8x8")
    assert code == 0
    assert "NOT_FINITE_TYPE" in out


@pytest.mark.parametrize("argv, code", [
    (("analyze", "--surface", "catalog:cylinder"), 2),
    (("analyze", "--surface", "catalog:cone", "--grid", "6x6"), 2),
    (("analyze", "--surface", "catalog:sphere", "--grid", "2x2"), 1),
    (("analyze", "--surface", "catalog:sphere", "--grid", "banana"), 1),
    (("analyze", "--surface", "catalog:blob"), 1),
    (("analyze", "--surface", "/nonexistent.srf"), 1),
    (("analyze",), 1),
    (("prove", "--case", "VII"), 1),
    (("scan", "--family", "catalog:sphere", "--param", "r", "--range", "1:2:0"), 1),
    (("scan", "--family", "sphere", "--param", "r", "--range", "1:2:2"), 1),
    (("frobnicate",), 1),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_bad_surface_file_reports_line_once(capsys, tmp_path):
    f = tmp_path / "bad.srf"
    f.write_text('[surface]\nkind = revolution\np = "sin(u"\nq = u\nu_range = 0 1\n')
    code, _, err = run(capsys, "analyze", "--surface", str(f))
    assert code == 1
    assert err.count("line 3") == 1


def test_surface_file_analyze(capsys, tmp_path):
    f = tmp_path / "s.srf"
    f.write_text('[surface]\nkind = revolution\np = "r*sin(u/r)"\nq = "-r*cos(u/r)"\nparams.r = 2\n'
                 "u_range = 0 6.283185307179586\narclength = assume\n")
    code, out, _ = run(capsys, "analyze", "--surface", str(f), "--grid", "8x8", "--json")
    assert code == 0
    assert json.loads(out)["classification"]["lambda"] == pytest.approx(1.0)


def test_prove_cases_i_to_iv(capsys):
    for tag in ("I", "II", "III", "IV"):
        code, out, _ = run(capsys, "prove", "--case", tag, "--points", "10")
        assert code == 0
        assert "certificates: all passed" in out


def test_prove_case_v_flags_printed_coefficients(capsys):
    code, out, err = run(capsys, "prove", "--case", "V", "--points", "10")
    assert code == 3
    assert "cubic.a3" in err
    assert "certificates: all passed" in out


def test_prove_published_seed(capsys):
    code, out, err = run(capsys, "prove", "--case", "V", "--seed", "published", "--json", "--points", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["seed"] == "published"
    assert "warning" in err


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--family", "catalog:sphere", "--param", "r",
                       "--range", "1:2:3", "--grid", "6x6")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["r"] for r in rows] == ["1", "1.5", "2"]
    for r in rows:
        assert float(r["lambda"]) == pytest.approx(2 / float(r["r"]))
        assert r["case"] == "II"
    assert list(rows[0]) == ["r", "rms_residual", "lambda", "mu", "case"]


def test_scan_torus_residuals(capsys):
    code, out, _ = run(capsys, "scan", "--family", "catalog:torus?R=3", "--param", "a",
                       "--range", "0.5:1.5:2", "--grid", "8x8")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert all(float(r["rms_residual"]) > 1e-3 for r in rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "secondform", "prove", "--case", "I", "--points", "3"],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0
    assert "2" in res.stdout


def test_report_from_dict_rejects_missing_keys():
    with pytest.raises(ValueError):
        report.Report.from_dict({"surface": {}})


def test_fmt_round_trips():
    for x in (0.1, 1 / 3, 2.0, 1e-300, -123456.789):
        assert float(report.fmt(x)) == x
