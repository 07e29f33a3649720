"""Command line behaviour: happy paths, formats, exit codes."""
from __future__ import annotations

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from loadspace import (
    AnalyticCurve,
    Harmonic,
    Interval,
    SpotPlan,
    analyze,
    sample,
    spot_payment,
    to_mu_vector,
)
from loadspace.cli import main
from loadspace.scenarios import ScenarioCheck, ScenarioReport

from conftest import UNIT

L1_TOTAL = 1769.0308998699195


def run_cli(capsys, *args: str) -> tuple[int, str, str]:
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_profile(path, curve, n: int) -> str:
    sc = sample(curve, n)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "power"])
        for t, v in zip(sc.times(), sc.values):
            w.writerow([repr(float(t)), repr(float(v))])
    return str(path)


def write_rows(path, rows) -> str:
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    return str(path)


def write_plan(path, doc: dict) -> str:
    path.write_text(json.dumps(doc))
    return str(path)


PLAN1_JSON = {
    "kind": "dynamism",
    "alpha0": 20.0,
    "alpha": {"base": 20.0, "cutoff": 10.0, "slope": 3.0},
    "beta": {"base": 20.0, "cutoff": 10.0, "slope": 3.0},
}


@pytest.fixture
def l1_profile(tmp_path, l1):
    return write_profile(tmp_path / "l1.csv", l1, 4001)


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def test_decompose_json(capsys, l1_profile):
    code, out, _ = run_cli(capsys, "decompose", l1_profile, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["a0"] == pytest.approx(100.0, rel=1e-9)
    assert [h["order"] for h in doc["harmonics"]] == [5, 20, 100]
    assert doc["harmonics"][0]["b"] == pytest.approx(20.0, rel=1e-9)
    assert doc["harmonics"][2]["f"] == pytest.approx(100.0, rel=1e-12)
    assert doc["parseval_ratio"] == pytest.approx(1.0, rel=1e-9)


def test_decompose_table(capsys, l1_profile):
    code, out, _ = run_cli(capsys, "decompose", l1_profile)
    assert code == 0
    assert "a0 = 100" in out
    assert "order" in out and "parseval" in out


def test_decompose_csv(capsys, l1_profile):
    code, out, _ = run_cli(capsys, "decompose", l1_profile, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["order", "f", "a", "b"]
    assert rows[1][0] == "0"
    assert float(rows[1][2]) == pytest.approx(100.0, rel=1e-9)
    assert len(rows) == 1 + 1 + 3  # header, order 0, three harmonics


def test_decompose_drop_tol_prunes_small_harmonics(capsys, l1_profile):
    code, out, _ = run_cli(
        capsys, "decompose", l1_profile, "--format", "json", "--drop-tol", "7.0"
    )
    assert code == 0
    doc = json.loads(out)
    assert [h["order"] for h in doc["harmonics"]] == [5, 20]


def test_decompose_rejects_unresolvable_nmax(capsys, tmp_path, l1):
    path = write_profile(tmp_path / "short.csv", l1, 40)
    code, _, err = run_cli(capsys, "decompose", path, "--nmax", "100")
    assert code == 3
    assert "insufficient samples" in err


# ---------------------------------------------------------------------------
# profile parsing failures
# ---------------------------------------------------------------------------

def test_profile_too_few_rows(capsys, tmp_path):
    path = write_rows(tmp_path / "p.csv", [["t", "power"], ["0.0", "1.0"]])
    code, _, err = run_cli(capsys, "decompose", path)
    assert code == 2
    assert "at least 2 data rows" in err


def test_profile_bad_header(capsys, tmp_path):
    path = write_rows(tmp_path / "p.csv", [["time", "kw"], ["0", "1"], ["1", "2"]])
    code, _, err = run_cli(capsys, "decompose", path)
    assert code == 2
    assert "expected header 't,power'" in err


def test_profile_bad_number_reports_line(capsys, tmp_path):
    path = write_rows(tmp_path / "p.csv", [["t", "power"], ["0.0", "1.0"], ["0.5", "oops"]])
    code, _, err = run_cli(capsys, "decompose", path)
    assert code == 2
    assert "line 3" in err


def test_profile_nonuniform_spacing(capsys, tmp_path):
    path = write_rows(
        tmp_path / "p.csv",
        [["t", "power"], ["0.0", "1"], ["0.4", "1"], ["1.0", "1"]],
    )
    code, _, err = run_cli(capsys, "decompose", path)
    assert code == 2
    assert "uniformly spaced" in err


def test_profile_nonincreasing_time(capsys, tmp_path):
    path = write_rows(
        tmp_path / "p.csv",
        [["t", "power"], ["0.0", "1"], ["0.5", "1"], ["0.5", "1"]],
    )
    code, _, err = run_cli(capsys, "decompose", path)
    assert code == 2
    assert "strictly increasing" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "decompose", str(tmp_path / "nope.csv"))
    assert code == 2
    assert "nope.csv" in err


# ---------------------------------------------------------------------------
# bill and compare
# ---------------------------------------------------------------------------

def test_bill_flat(capsys, tmp_path, l1_profile):
    plan = write_plan(tmp_path / "flat.json", {"kind": "flat", "unit_price": 20.0})
    code, out, _ = run_cli(capsys, "bill", l1_profile, plan, "--format", "json")
    assert code == 0
    assert json.loads(out)["payment"] == pytest.approx(1000.0, rel=1e-9)


def test_bill_dynamism_matches_reference_total(capsys, tmp_path, l1_profile):
    plan = write_plan(tmp_path / "plan1.json", PLAN1_JSON)
    code, out, _ = run_cli(capsys, "bill", l1_profile, plan, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "dynamism"
    assert doc["payment"] == pytest.approx(L1_TOTAL, abs=1e-6)
    bill = doc["bill"]
    assert bill["total"] == bill["non_dynamic"] + bill["dynamic"]
    # sampled analysis leaves ~1e-13 residue in the other coefficient of a
    # kept harmonic, so count only the items that carry real energy
    major = [it for it in bill["line_items"] if abs(it["coefficient"]) > 1e-3]
    assert len(major) == 4


def test_bill_dynamism_table(capsys, tmp_path, l1_profile):
    plan = write_plan(tmp_path / "plan1.json", PLAN1_JSON)
    code, out, _ = run_cli(capsys, "bill", l1_profile, plan)
    assert code == 0
    assert "non-dynamic" in out and "line items:" in out


def test_bill_spot_matches_library(capsys, tmp_path, l1, l1_profile):
    doc = {"kind": "spot", "t1": 0.0, "t2": 1.0, "unit_prices": [10.0, 30.0]}
    plan = write_plan(tmp_path / "spot.json", doc)
    code, out, _ = run_cli(capsys, "bill", l1_profile, plan, "--format", "json")
    assert code == 0
    sampled = sample(l1, 4001)
    expected = spot_payment(SpotPlan(UNIT, (10.0, 30.0)), sampled)
    assert json.loads(out)["payment"] == pytest.approx(expected, rel=1e-12)


def test_bill_supply_flips_polarity(capsys, tmp_path, l1_profile):
    flipped = AnalyticCurve(
        UNIT,
        50.0,
        (Harmonic(5, 0.0, 20.0), Harmonic(20, -10.0, 0.0), Harmonic(100, 0.0, 5.0)),
    )
    supply = write_profile(tmp_path / "supply.csv", flipped, 4001)
    plan = write_plan(tmp_path / "plan1.json", PLAN1_JSON)
    code, out, _ = run_cli(
        capsys, "bill", l1_profile, plan, "--supply", supply, "--format", "json"
    )
    assert code == 0
    a20_price = 20.0 + 3.0 * np.log10(20.0)
    expected = L1_TOTAL - 2.0 * 10.0 * a20_price
    assert json.loads(out)["payment"] == pytest.approx(expected, abs=1e-6)


def test_bill_rejects_builtin_plan_tokens(capsys, l1_profile):
    # builtin plan names are a plotdata convenience, not a billing input
    code, _, err = run_cli(capsys, "bill", l1_profile, "plan1")
    assert code == 2
    assert "plan1" in err


def test_bill_bad_plan_json(capsys, tmp_path, l1_profile):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "bill", l1_profile, str(bad))
    assert code == 2
    assert "invalid JSON" in err


def test_bill_unknown_plan_kind(capsys, tmp_path, l1_profile):
    plan = write_plan(tmp_path / "p.json", {"kind": "mystery"})
    code, _, err = run_cli(capsys, "bill", l1_profile, plan)
    assert code == 2
    assert "unknown plan kind" in err


def test_bill_plan_missing_field(capsys, tmp_path, l1_profile):
    plan = write_plan(tmp_path / "p.json", {"kind": "flat"})
    code, _, err = run_cli(capsys, "bill", l1_profile, plan)
    assert code == 2
    assert "missing plan field" in err


def test_bill_plan_negative_spot_price(capsys, tmp_path, l1_profile):
    doc = {"kind": "spot", "t1": 0.0, "t2": 1.0, "unit_prices": [10.0, -3.0]}
    plan = write_plan(tmp_path / "p.json", doc)
    code, _, err = run_cli(capsys, "bill", l1_profile, plan)
    assert code == 2
    assert "positive" in err


def test_bill_spot_interval_mismatch(capsys, tmp_path, l1_profile):
    doc = {"kind": "spot", "t1": 0.0, "t2": 2.0, "unit_prices": [10.0, 30.0]}
    plan = write_plan(tmp_path / "p.json", doc)
    code, _, err = run_cli(capsys, "bill", l1_profile, plan)
    assert code == 3
    assert "partition" in err


def test_compare(capsys, tmp_path, l1_profile):
    a = write_plan(tmp_path / "a.json", {"kind": "flat", "unit_price": 20.0})
    b = write_plan(tmp_path / "b.json", {"kind": "flat", "unit_price": 10.0})
    code, out, _ = run_cli(capsys, "compare", l1_profile, a, b, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["difference"] == pytest.approx(500.0, rel=1e-9)
    assert [r["kind"] for r in doc["plans"]] == ["flat", "flat"]


# ---------------------------------------------------------------------------
# calibrate
# ---------------------------------------------------------------------------

def _calibration_manifest(tmp_path, count: int):
    rng = np.random.default_rng(99)
    iota_true = rng.uniform(-2.0, 2.0, size=5)
    rows = [["profile", "cost"]]
    for i in range(count):
        harmonics = tuple(
            Harmonic(n, rng.uniform(-5, 5), rng.uniform(-5, 5)) for n in (1, 2)
        )
        load = AnalyticCurve(UNIT, rng.uniform(10, 50), harmonics)
        name = f"obs{i}.csv"
        write_profile(tmp_path / name, load, 64)
        mu = to_mu_vector(analyze(load, 2)).dense(5)
        rows.append([name, repr(float(mu @ iota_true))])
    manifest = write_rows(tmp_path / "manifest.csv", rows)
    return manifest, iota_true


def test_calibrate_recovers_characteristic(capsys, tmp_path):
    manifest, iota_true = _calibration_manifest(tmp_path, 6)
    code, out, _ = run_cli(
        capsys, "calibrate", manifest, "--nmax", "2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n_max"] == 2
    fitted = np.array([entry["value"] for entry in doc["iota"]])
    assert np.allclose(fitted, iota_true, atol=1e-6)
    assert [e["kind"] for e in doc["iota"]] == ["energy", "cos", "sin", "cos", "sin"]
    assert doc["iota"][3]["f"] == pytest.approx(2.0, rel=1e-12)
    assert doc["residuals"]["max_abs"] <= 1e-6


def test_calibrate_table_output(capsys, tmp_path):
    manifest, _ = _calibration_manifest(tmp_path, 6)
    code, out, _ = run_cli(capsys, "calibrate", manifest, "--nmax", "2")
    assert code == 0
    assert "cost characteristic" in out and "residual max" in out


def test_calibrate_underdetermined(capsys, tmp_path):
    manifest, _ = _calibration_manifest(tmp_path, 4)
    code, _, err = run_cli(capsys, "calibrate", manifest, "--nmax", "2")
    assert code == 3
    assert "underdetermined" in err


def test_calibrate_bad_manifest_header(capsys, tmp_path):
    manifest = write_rows(tmp_path / "m.csv", [["file", "price"], ["x.csv", "1"]])
    code, _, err = run_cli(capsys, "calibrate", manifest)
    assert code == 2
    assert "expected header 'profile,cost'" in err


def test_calibrate_missing_referenced_profile(capsys, tmp_path):
    manifest = write_rows(
        tmp_path / "m.csv", [["profile", "cost"], ["ghost.csv", "1.0"]]
    )
    code, _, err = run_cli(capsys, "calibrate", manifest)
    assert code == 2
    assert "ghost.csv" in err


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------

def test_distance_of_profile_with_itself(capsys, l1_profile):
    code, out, _ = run_cli(capsys, "distance", l1_profile, l1_profile)
    assert code == 0
    assert out.strip() == "0.0"


def test_distance_interval_mismatch(capsys, tmp_path, l1):
    a = write_profile(tmp_path / "a.csv", l1, 101)
    b = write_profile(tmp_path / "b.csv", AnalyticCurve(Interval(0.0, 2.0), 5.0), 101)
    code, _, err = run_cli(capsys, "distance", a, b)
    assert code == 3
    assert "incompatible intervals" in err


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

def test_scenarios_all(capsys):
    code, out, _ = run_cli(capsys, "scenarios")
    assert code == 0
    assert "scenario table1: PASS" in out
    assert "scenario case1: PASS" in out


def test_scenarios_json(capsys):
    code, out, _ = run_cli(capsys, "scenarios", "--which", "table1", "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 1
    assert reports[0]["name"] == "table1"
    assert reports[0]["passed"] is True


def test_scenarios_output_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "scenarios", "--format", "json")
    _, second, _ = run_cli(capsys, "scenarios", "--format", "json")
    assert first == second


def test_scenarios_failure_sets_exit_code(capsys, monkeypatch):
    check = ScenarioCheck(
        description="forced failure",
        provenance="reference",
        expected=1.0,
        actual=2.0,
        passed=False,
    )
    monkeypatch.setattr(
        "loadspace.cli.reproduce_table1",
        lambda: ScenarioReport("table1", (check,)),
    )
    code, out, _ = run_cli(capsys, "scenarios", "--which", "table1")
    assert code == 1
    assert "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "loadspace", "scenarios", "--which", "table1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


# ---------------------------------------------------------------------------
# plotdata
# ---------------------------------------------------------------------------

def test_plotdata_pff_builtin_plan(capsys):
    code, out, _ = run_cli(capsys, "plotdata", "plan1", "--what", "pff")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["f", "alpha", "beta"]
    table = {float(r[0]): (float(r[1]), float(r[2])) for r in rows[1:]}
    assert table[0.0] == (20.0, 20.0)
    assert table[100.0] == (26.0, 26.0)
    assert len(table) == 201  # f = 0..200 inclusive


def test_plotdata_pff_from_plan_file(capsys, tmp_path):
    plan = write_plan(tmp_path / "plan1.json", PLAN1_JSON)
    code, out, _ = run_cli(
        capsys, "plotdata", plan, "--what", "pff", "--fmax", "20", "--fstep", "5"
    )
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert [float(r[0]) for r in rows[1:]] == [0.0, 5.0, 10.0, 15.0, 20.0]


def test_plotdata_pff_writes_file(tmp_path, capsys):
    out_path = tmp_path / "pff.csv"
    code, out, _ = run_cli(
        capsys, "plotdata", "plan2", "--what", "pff", "--out", str(out_path)
    )
    assert code == 0
    assert out == ""
    rows = list(csv.reader(out_path.read_text().splitlines()))
    assert rows[0] == ["f", "alpha", "beta"]


def test_plotdata_pff_rejects_flat_plan(capsys, tmp_path):
    plan = write_plan(tmp_path / "flat.json", {"kind": "flat", "unit_price": 5.0})
    code, _, err = run_cli(capsys, "plotdata", plan, "--what", "pff")
    assert code == 2
    assert "dynamism plan" in err


def test_plotdata_pff_rejects_zero_fstep(capsys):
    code, _, err = run_cli(capsys, "plotdata", "plan1", "--what", "pff", "--fstep", "0")
    assert code == 3
    assert "fstep" in err


def test_plotdata_curve_round_trips_profile(capsys, tmp_path, l1):
    path = write_profile(tmp_path / "l1.csv", l1, 51)
    code, out, _ = run_cli(capsys, "plotdata", path, "--what", "curve")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["t", "power"]
    assert len(rows) == 52
    sc = sample(l1, 51)
    assert float(rows[1][1]) == sc.values[0]


def test_plotdata_spectrum(capsys, l1_profile):
    code, out, _ = run_cli(capsys, "plotdata", l1_profile, "--what", "spectrum")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["order", "f", "a", "b"]
    assert float(rows[1][2]) == pytest.approx(100.0, rel=1e-9)
    assert [int(r[0]) for r in rows[2:]] == [5, 20, 100]
