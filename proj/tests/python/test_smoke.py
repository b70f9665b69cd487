import math

import numpy as np
import pytest

import lm05hd


def test_algebra():
    u = lm05hd.weyl_u(3, 1, 0)
    assert u.shape == (3, 3)
    assert np.allclose(u @ u.conj().T, np.eye(3))
    f = lm05hd.fourier_matrix(4)
    assert np.allclose(np.abs(f) ** 2, 0.25)
    b = lm05hd.bell_state(2, 0, 0)
    assert np.allclose(b, np.array([1, 0, 0, 1]) / math.sqrt(2))


def test_individual_attack():
    assert lm05hd.min_detection_probability(2, math.pi / 2) == pytest.approx(
        0.375, abs=1e-12
    )
    pt = lm05hd.individual_key_rate(2, 0.0)
    assert pt["r"] == pytest.approx(1.0, abs=1e-10)
    th = lm05hd.detection_threshold(2)
    assert th["crossing_found"]
    assert 0.0 < th["pdet"] < 0.375


def test_collective_rates():
    r = lm05hd.error_rates("dep", "ind", 2, 0.2)
    assert r["Qk"][0] == pytest.approx(0.18, abs=1e-12)
    assert r["Qt"][0] == pytest.approx(0.10, abs=1e-12)
    pt = lm05hd.collective_key_rate("dpf", "corr", 2, 0.3)
    assert pt["Qk"] == (0.0, 0.0)  # zero key error despite noise
    assert pt["r"] < 1.0
    assert lm05hd.gamma_overlap(4, 0) == pytest.approx(0.25, abs=1e-9)


def test_oracle_matches_closed_form():
    ps = lm05hd.purified_statistics("dep", "ind", 3, 0.3, 0)
    assert ps["Qk"] == pytest.approx(0.34, abs=1e-9)
    assert ps["q"].shape == (3, 3)
    assert ps["q"].sum() == pytest.approx(1.0, abs=1e-9)


def test_simulation():
    st = lm05hd.run_noise(2, 4000, "dep", "ind", 0.0, seed=5)
    assert st["Qk_hat"] == (0.0, 0.0)
    assert st["Pdet_hat"] == 0.0
    again = lm05hd.run_noise(2, 4000, "dep", "ind", 0.0, seed=5)
    assert st == again  # deterministic for a fixed seed
    cl = lm05hd.run_cloning(2, 2000, 0.0, seed=3)
    assert cl["PAB_hat"] == (1.0, 1.0)
    with pytest.raises(ValueError):
        lm05hd.run_noise(9, 100, "dep", "ind", 0.1)
