"""Command-line interface: exit codes, report shape, and determinism."""
import json
import os
import subprocess
import sys

import pytest

BASE = [sys.executable, "-m", "conslaw.cli"]


def run(*args, env=None):
    e = dict(os.environ)
    if env:
        e.update(env)
    return subprocess.run(BASE + list(args), capture_output=True,
                          text=True, env=e)


def test_list_systems_includes_table_rows():
    r = run("list", "systems")
    assert r.returncode == 0
    for sid in ("gasdyn", "em", "mhd", "fluid-incompressible"):
        assert sid in r.stdout


def test_list_currents_includes_catalog_rows():
    r = run("list", "currents")
    assert r.returncode == 0
    for cid in ("mass", "energy", "helicity", "cross-helicity", "faraday",
                "ertel", "charge-current"):
        assert cid in r.stdout


def test_list_solutions():
    r = run("list", "solutions")
    assert r.returncode == 0
    for sid in ("em-planewave", "rigid-rotation", "potential-flow"):
        assert sid in r.stdout


def test_check_pass_and_exit_zero():
    r = run("check", "--system", "gasdyn", "--current", "mass")
    assert r.returncode == 0 and "PASS" in r.stdout
    r2 = run("check", "--system", "em", "--current", "faraday")
    assert r2.returncode == 0


def test_check_corrupted_flux_fails_with_residual(tmp_path):
    bad = tmp_path / "bad.claw"
    bad.write_text("""current bad-mass on gasdyn kind volumetric {
      density: rho;
      flux: [rho*u1 + p, rho*u2, rho*u3];
    }""")
    r = run("check", "--file", str(bad))
    assert r.returncode == 1
    assert "FAIL" in r.stdout and "p_x1" in r.stdout


def test_check_parse_error_exit_two(tmp_path):
    bad = tmp_path / "broken.claw"
    bad.write_text("current { nonsense")
    r = run("check", "--file", str(bad))
    assert r.returncode == 2


def test_classify_charge_current_reports_boundary_law():
    r = run("classify", "--system", "em", "--current", "charge-current")
    assert r.returncode == 0
    assert "trivial-IIb" in r.stdout
    assert "boundary law" in r.stdout


def test_classify_mass_nontrivial():
    r = run("classify", "--system", "gasdyn", "--current", "mass")
    assert r.returncode == 0
    assert "nontrivial" in r.stdout


def test_classify_verification_failure_aborts(tmp_path):
    bad = tmp_path / "bad.claw"
    bad.write_text("""current broken on gasdyn kind volumetric {
      density: rho;
      flux: [0, 0, 0];
    }""")
    r = run("classify", "--file", str(bad))
    assert r.returncode == 1


def test_map_constant_xi():
    r = run("map", "--system", "fluid-incompressible",
            "--current", "density-gradient", "--to", "volumetric",
            "--xi", "i")
    assert r.returncode == 0
    assert "trivial" in r.stdout


def test_map_constraint_violation_exit_one():
    r = run("map", "--system", "em", "--current", "faraday",
            "--to", "volumetric", "--xi", "divergence-free;-x2;x1;0")
    assert r.returncode == 1


def test_numcheck_energy_balance():
    r = run("numcheck", "--system", "em-vacuum", "--current", "energy",
            "--solution", "em-planewave", "--domain", "box:0,0,0,1,1,1",
            "--time", "0.3")
    assert r.returncode == 0 and "PASS" in r.stdout


def test_numcheck_div_b_boxboundary():
    r = run("numcheck", "--system", "em-vacuum", "--current", "div-B",
            "--solution", "em-planewave",
            "--domain", "boxboundary:0,0,0,1,1,1", "--time", "0.3")
    assert r.returncode == 0 and "PASS" in r.stdout


def test_numcheck_circulation_circle():
    r = run("numcheck", "--system", "irrotational-fluid",
            "--current", "circulation", "--solution", "potential-flow",
            "--domain", "circle:center=0,0,0,r=1,plane=xy", "--time", "0.2")
    assert r.returncode == 0 and "PASS" in r.stdout


def test_json_reports_deterministic():
    args = ("classify", "--system", "gasdyn", "--current", "mass",
            "--format", "json")
    r1, r2 = run(*args), run(*args)
    assert r1.stdout == r2.stdout
    data = json.loads(r1.stdout)
    assert data["schema"] == "conslaw-report/1"
    assert data["status"] == "nontrivial"


def test_json_and_text_carry_same_verdict():
    rj = run("check", "--system", "mhd", "--current", "induction",
             "--format", "json")
    rt = run("check", "--system", "mhd", "--current", "induction")
    assert json.loads(rj.stdout)["holds"] is True
    assert "PASS" in rt.stdout


def test_catalog_dir_override(tmp_path):
    extra = tmp_path / "extra.claw"
    extra.write_text("""current extra-mass on gasdyn kind volumetric {
      density: rho;
      flux: [rho*u1, rho*u2, rho*u3];
    }""")
    r = run("check", "--system", "gasdyn", "--current", "extra-mass",
            env={"CONSLAW_CATALOG_DIR": str(tmp_path)})
    assert r.returncode == 0 and "PASS" in r.stdout
