import csv
import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from riemann_spheroids.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_maclaurin(capsys):
    code, out, _ = run(capsys, "family", "maclaurin", "--e", "0.5")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("Omega^2/(pi rho G) = "))
    assert float(line.split("=")[1]) == pytest.approx(0.137994, abs=1e-6)


def test_family_spherical_has_zero_momentum(capsys):
    code, out, _ = run(capsys, "family", "spherical")
    assert code == 0 and "mu = (0, 0)" in out


def test_family_transversal_ratio(capsys):
    code, out, _ = run(capsys, "family", "transversal+", "--e", "0.6")
    assert code == 0 and "f = 2.0" in out.splitlines()


@pytest.mark.parametrize("argv,verdict", [
    (["stability", "maclaurin", "--e", "0.96"], "Unstable"),
    (["stability", "transversal+", "--e", "0.3"], "NonlinearlyStable"),
    (["stability", "spherical"], "NonlinearlyStable"),
])
def test_stability_verdicts(capsys, argv, verdict):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and f"verdict = {verdict}" in out


def test_stability_json_round_trip(capsys):
    code, out, _ = run(capsys, "stability", "maclaurin", "--e", "0.5", "--json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "NonlinearlyStable"
    assert json.loads(json.dumps(d)) == d
    assert {"s1", "s2", "lh_eigenvalues", "r_units"} <= set(d)


def test_domain_errors_exit_2(capsys):
    assert run(capsys, "family", "maclaurin", "--e", "1.5")[0] == 2
    assert run(capsys, "scan", "spherical")[0] == 2
    assert run(capsys, "scan", "maclaurin", "--steps", "1")[0] == 2
    assert run(capsys, "family", "jacobi")[0] == 2
    code, _, err = run(capsys, "--rho", "-1", "family", "spherical")
    assert code == 2 and "error" in err


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_scan_maclaurin_crosses_e0(capsys):
    code, out, _ = run(capsys, "scan", "maclaurin", "--e-min", "0.9", "--e-max", "0.98",
                       "--steps", "9")
    rows = _csv(out)
    assert code == 0 and len(rows) == 9
    assert list(rows[0]) == ["e", "Omega2_over_piRhoG", "S1_over_R", "S2_over_R", "verdict"]
    flips = [(float(a["e"]), float(b["e"])) for a, b in zip(rows, rows[1:])
             if a["verdict"] != b["verdict"]]
    assert len(flips) == 1 and flips[0][0] < 0.952887 < flips[0][1]


def test_scan_transversal_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, _, _ = run(capsys, "scan", "transversal-", "--e-min", "0.05", "--e-max", "0.95",
                     "--steps", "7", "--output", str(path))
    rows = _csv(path.read_text(encoding="utf-8"))
    assert code == 0 and len(rows) == 7
    assert all(float(r["detU_e10_over_R2"]) > 0 and float(r["trU_over_R"]) > 0 for r in rows)
    assert all(r["verdict"] == "NonlinearlyStable" for r in rows)
    # 17 significant digits
    assert len(rows[1]["phi_over_R"].replace(".", "").lstrip("0")) >= 15


def test_scan_is_unit_independent(capsys, monkeypatch):
    argv = ["scan", "maclaurin", "--e-min", "0.2", "--e-max", "0.8", "--steps", "3"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, "--rho", "7", "--grav", "0.3", *argv)
    monkeypatch.setenv("ELLIPSOID_RHO", "2.5")
    _, c, _ = run(capsys, *argv)
    assert a == b == c


def test_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("ELLIPSOID_RHO", "2")
    _, out, _ = run(capsys, "stability", "spherical", "--json")
    assert json.loads(out)["rho"] == 2.0
    monkeypatch.setenv("ELLIPSOID_GRAV", "oops")
    assert run(capsys, "family", "spherical")[0] == 2


def test_scan_json_and_svg(tmp_path, capsys):
    code, out, _ = run(capsys, "scan", "maclaurin", "--steps", "4", "--format", "json")
    d = json.loads(out)
    assert code == 0 and len(d["rows"]) == 4
    svg = tmp_path / "m.svg"
    code, _, _ = run(capsys, "scan", "maclaurin", "--steps", "4", "--format", "svg",
                     "--output", str(svg))
    root = ET.parse(svg).getroot()
    assert code == 0 and root.get("version") == "1.1"
    assert len(root.findall(".//{http://www.w3.org/2000/svg}polyline")) == 3


def test_scan_unwritable_path(tmp_path, capsys):
    code, _, err = run(capsys, "scan", "maclaurin", "--steps", "2", "--output",
                       str(tmp_path / "missing" / "x.csv"))
    assert code == 3 and "cannot write" in err


def test_scan_parallel_matches_serial(capsys):
    argv = ["scan", "transversal+", "--e-min", "0.1", "--e-max", "0.9", "--steps", "4"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_find_e0(capsys):
    code, out, _ = run(capsys, "find-e0", "--tol", "1e-10")
    lines = dict(l.split(" = ", 1) for l in out.splitlines())
    assert code == 0
    assert lines["e0"].startswith("0.952887")
    assert float(lines["c/a"].split()[0]) == pytest.approx(0.303327, abs=1e-5)
    assert float(lines["bracket width"]) <= 1e-10


def test_verify_subset_and_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "--only", "potential")
    assert code == 0 and all("potential" in l for l in out.splitlines()[:-1])
    code, out, _ = run(capsys, "verify", "--only", "numerics,equilibria", "--inject-perturbation")
    assert code == 1 and "FAIL" in out
    assert run(capsys, "verify", "--only", "nope")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "riemann_spheroids", "family", "spherical"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "lambda = " in res.stdout
