import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "pflmaps.cli", *args],
                          capture_output=True, text=True)


def test_conditions_json():
    r = run_cli("conditions", "3/4", "36/7", "9")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["conditions"]["CT"] == "0"
    assert data["conditions"]["CS1"] == "0"
    assert data["conditions"]["CS2"] != "0"
    assert data["natural_duals"]["T"]["A"] == "3"
    assert sorted(data["natural_duals"]["T"]["endpoints"]) == ["-1/3", "3"]


def test_conditions_all_zero_linear():
    r = run_cli("conditions", "1", "3", "3")
    data = json.loads(r.stdout)
    assert all(v == "0" for v in data["conditions"].values())


def test_conditions_cs123():
    r = run_cli("conditions", "2", "6", "6")
    data = json.loads(r.stdout)
    assert data["conditions"]["CS123"] == "0"


def test_conditions_parse_error():
    assert run_cli("conditions", "3/4", "x", "9").returncode == 2


def test_verify_entry_pass_and_exit_codes():
    r = run_cli("verify", "thm1-cs1")
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert all(rec["verdict"] == "pass" for rec in payload)
    assert run_cli("verify", "nonsense").returncode == 2


def test_verify_deterministic_output():
    a = run_cli("verify", "quintic")
    b = run_cli("verify", "quintic")
    assert a.stdout == b.stdout and a.returncode == 0


def test_density_csv():
    r = run_cli("density", "ex1-Z", "--grid", "4")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "x,density,certified_bound,kuzmin_residual"
    assert len(lines) == 5
    x, v, b, resid = lines[1].split(",")
    # g(1/5) = 1/(6/5) - 1/(11/5) + 1/(14/5)
    assert abs(float(v) - (5 / 6 - 5 / 11 + 5 / 14)) < 1e-12
    assert float(resid) == 0.0      # invariant density: exact residual


def test_density_unknown_spec():
    assert run_cli("density", "definitely-not-a-map").returncode == 2


def test_simulate_ulam_linear():
    r = run_cli("simulate", "linear", "--method", "ulam", "--cells", "120")
    assert r.returncode == 0
    summary = json.loads(r.stderr.strip().splitlines()[-1])
    assert float(summary["l1_vs_exact"]) < 1e-10
    assert len(r.stdout.strip().splitlines()) == 121


def test_simulate_orbit_ex6():
    r = run_cli("simulate", "ex6-Z", "--method", "orbit", "--cells", "60",
                "--iters", "40000")
    assert r.returncode == 0
    summary = json.loads(r.stderr.strip().splitlines()[-1])
    assert float(summary["l1_vs_exact"]) < 0.08


def test_catalog_export():
    r = run_cli("catalog", "export", "--json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert "thm2-cs13" in data and "note" in data["thm2-cs13"]
