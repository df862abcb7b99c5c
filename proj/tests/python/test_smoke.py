import os
import subprocess
from fractions import Fraction

import pytest

import axelrod_lab as al


def test_exact_theory_values():
    assert al.h1(2, 5) == Fraction(1, 10)
    assert al.h1(2, 4) == Fraction(-1, 8)
    assert al.h2(2, 4) == Fraction(1, 512)
    assert al.h2(3, 3) == Fraction(73, 648)
    p = al.probabilities(2, 4)
    assert p["p11"] == Fraction(1, 8) and p["p12"] == Fraction(3, 8)
    assert p["p0"] + p["p1"] + p["p2"] == 1
    assert al.geometric_tail(5, 2) == Fraction(9, 16)
    assert al.geometric_mean(4) == 3
    assert al.predict_regime(2, 3) == "open"
    assert al.symmetric_fixation_condition(2, 5)
    assert not al.symmetric_fixation_condition(2, 3)


def test_model_basics():
    params = al.ModelParams([2, 4], length=50, seed=3)
    assert params.features == 2
    state = al.init_state(params, 3)
    assert state == al.init_state(params, 3)
    assert all(1 <= v <= 4 for v in state.opinions())
    assert al.interaction_rate(1, 2) == 0.25
    with pytest.raises(ValueError):
        al.ModelParams([1, 3], length=10)
    with pytest.raises(ValueError):
        al.interaction_rate(3, 2)


def test_simulation_runs_to_absorption():
    params = al.ModelParams([2, 4], length=300)
    sim = al.Simulation(params, seed=5)
    summary = sim.run(snapshot_times=[1.0, 2.0, 4.0])
    assert summary["absorbed"]
    assert sim.absorbed
    assert len(summary["snapshots"]) == 3
    assert al.derive_spins(sim.state) == sim.spins
    d = al.density_estimates(sim.spins)
    assert d["u_active"] == [0.0, 0.0]
    assert d["ubar"][0] == d["ubar"][1] == d["blockade_density"]


def test_simulation_is_reproducible():
    params = al.ModelParams([3, 3], length=100)
    a = al.Simulation(params, seed=2, mode="all-arrivals", track_ancestors=True)
    b = al.Simulation(params, seed=2, mode="all-arrivals", track_ancestors=True)
    ra = a.run(max_events=20000)
    rb = b.run(max_events=20000)
    assert ra["final_time"] == rb["final_time"]
    assert a.state == b.state
    origin = a.initial_state
    for x in range(params.length):
        for i in range(2):
            assert a.state.opinion(x, i) == origin.opinion(a.ancestor(x, i), i)


def test_verify_binding():
    report = al.verify("coupling", q=[3, 3], length=100, max_events=5000)
    assert report["passed"]
    assert "lemma6" in al.verification_targets()


def test_cli_in_process(tmp_path):
    code, out, _ = al.run_cli(["theory", "--q", "2,5"])
    assert code == 0 and "1/10" in out
    code, _, err = al.run_cli(["verify", "nonsense"])
    assert code == 1 and "unknown" in err
    code, _, _ = al.run_cli(["simulate", "--q", "2,3", "--length", "100", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "densities.csv").exists()


def test_cli_executable(tmp_path):
    exe = os.environ.get("AXELROD_LAB_CLI")
    if not exe:
        pytest.skip("CLI path not provided")
    result = subprocess.run([exe, "theory", "--q", "2,4", "--format", "csv"],
                            capture_output=True, text=True, check=True)
    assert ",1/512," in result.stdout
