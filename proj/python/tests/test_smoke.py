import json
import math
import os

import numpy as np
import pytest

import dressline as dl


def test_exponents_and_amplitudes():
    pair = dl.dressed_exponents(dl.LevelScheme(1.0, 0.5, 0.3), dl.DriveField(2.0, 3.0))
    product = pair.alpha1 * pair.alpha2
    assert product == pytest.approx(1.0 * (0.5 + 3j) + 4.0, rel=1e-13)
    assert abs(dl.amplitude_n(pair, 0.0)) == pytest.approx(1.0)
    assert abs(dl.amplitude_m(pair, 0.0)) == pytest.approx(0.0, abs=1e-15)


def test_symmetric_doublet_peaks():
    scheme = dl.LevelScheme(1.0, 1.0, 1.0)
    drive = dl.DriveField(10.0, 0.0)
    probe = dl.ProbeField(0.1)
    grid = np.linspace(-15.0, 15.0, 301)
    w = dl.scan_spectrum(scheme, drive, probe, grid, threads=2)
    assert w.shape == grid.shape
    assert np.all(w >= 0.0)
    assert abs(grid[np.argmax(w)]) == pytest.approx(10.0, abs=0.2)
    assert w[150] < 0.2 * w.max()


def test_closed_form_matches_time_domain():
    scheme = dl.LevelScheme(1.0, 0.5, 0.3)
    drive = dl.DriveField(2.0, 3.0)
    probe = dl.ProbeField(1.0)
    for omega_mu in (-4.0, 0.0, 1.5, 6.0):
        exact = dl.w_mu_exact(scheme, drive, probe, omega_mu)
        ode = dl.w_mu_time_domain(scheme, drive, probe, omega_mu)
        assert exact == pytest.approx(ode, rel=1e-7)


def test_weak_expansion_and_doppler_forms():
    scheme = dl.LevelScheme(1.0, 0.5, 0.3)
    drive = dl.DriveField(0.01, 10.0, 1.0)
    probe = dl.ProbeField(1.0, 1.2, math.pi / 3)
    assert dl.w_mu_weak(scheme, drive, probe, 10.0) == pytest.approx(dl.w_mu_exact(scheme, drive, probe, 10.0), rel=1e-3)
    assert dl.effective_q(1.0, 1.0, math.pi, 1.0) == pytest.approx(2.0)
    assert dl.effective_q(1.0, 1.0, 0.0, 1.0, process="two_quantum_luminescence") == pytest.approx(2.0)
    ens = dl.ThermalEnsemble(0.5)
    assert dl.doppler_weak_doublet(scheme, drive, probe, ens, 10.0) > 0.0
    assert dl.doppler_averaged_resonance(2.0 + 0j, 0.0) == pytest.approx(0.5)


def test_errors_are_mapped():
    with pytest.raises(ValueError):
        dl.LevelScheme(-1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        dl.w_mu_exact(dl.LevelScheme(1, 1, 1), dl.DriveField(1, 0), dl.ProbeField(1), 0.0, process="nope")


def test_run_job_matches_golden_summary():
    golden = os.environ.get("DRESSLINE_GOLDEN_DIR")
    if golden is None:
        pytest.skip("golden directory not configured")
    with open(os.path.join(golden, "pinned.json")) as f:
        config = json.load(f)
    config.pop("output", None)
    omega_mu, w, summary = dl.run_job("spectrum", config)
    with open(os.path.join(golden, "spectrum.summary.json")) as f:
        expected = json.load(f)
    assert len(omega_mu) == len(w) == config["grid"]["count"]
    centers = [c["center"] for c in summary["components"]]
    assert centers == pytest.approx([c["center"] for c in expected["components"]], rel=1e-12)


def test_certify_default_suite_subset():
    config = {
        "schema": "dressline/1",
        "scheme": {"gamma_m": 1, "gamma_n": 0.5, "gamma_l": 0.3},
        "drive": {"G": 2, "Omega": 3},
        "probe": {"G_mu": 1},
        "certify": {"cases": [{"id": "eq2_6", "tolerance": 1e-6}]},
    }
    (record,) = dl.certify(config)
    assert record["outcome"] == "pass"
    assert record["max_deviation"] < 1e-6
