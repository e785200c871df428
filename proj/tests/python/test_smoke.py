import math

import numpy as np
import pytest

import boussinesq6 as b6

PERIOD = 32 * math.pi


def test_symbols():
    assert b6.gamma(1.0, 1) == pytest.approx(1.0)
    assert b6.multiplier(1.0, 1) == pytest.approx(1.0)
    assert b6.multiplier(0.0, 1) == 0.0
    assert b6.rho(2.0, -1) == pytest.approx(9.0)
    assert b6.bracket(-2.5) == 3.5
    assert b6.kernel_K(0.0, 1.0, 2.0, -1.0) == 0.0


def test_linear_evolution_conserves_energy():
    phi = b6.gaussian_band_data(PERIOD, 128, 1.0)
    psi = np.zeros(128, dtype=complex)
    u, v = b6.linear_evolve(PERIOD, phi, psi, 0.7)
    xi = 2 * math.pi / PERIOD * np.fft.fftfreq(128, 1.0 / 128)
    g = np.array([b6.gamma(x) for x in xi])
    e0 = g**2 * np.abs(phi) ** 2
    e1 = np.abs(v) ** 2 + g**2 * np.abs(u) ** 2
    assert np.allclose(e0, e1, rtol=1e-12, atol=1e-300)


def test_picard_matches_oracle():
    phi = b6.gaussian_band_data(PERIOD, 256, 1e-2)
    psi = np.zeros(256, dtype=complex)
    t = b6.picard_solve(PERIOD, phi, psi, time_nodes=51)
    o = b6.step_oracle_solve(PERIOD, phi, psi, time_nodes=51)
    assert t["u_hat"].shape == (51, 256)
    assert t["residuals"][-1] < 1e-13
    gap = max(b6.hs_norm(PERIOD, a - c, 0.0) for a, c in zip(t["u_hat"], o["u_hat"]))
    assert gap < 1e-6
    assert b6.hs_norm(PERIOD, phi, 0.0) == pytest.approx(1e-2)


def test_oversized_data_raise():
    phi = b6.gaussian_band_data(PERIOD, 128, 2000.0)
    with pytest.raises(b6.NoContraction) as err:
        b6.picard_solve(PERIOD, phi, np.zeros(128, dtype=complex), time_nodes=51, max_iters=30)
    assert err.value.last_residual >= 1e-13


def test_sweeps():
    rep = b6.illposed_sweep([16, 32, 64])
    assert rep["predicted_exponent"] == pytest.approx(0.8)
    assert abs(rep["fitted_slope"] - 0.8) < 0.1
    bil = b6.bilinear_ratio_sweep([16, 32, 64], s=0.5)
    assert bil["informational"]
    assert len(bil["points"]) == 3
    with pytest.raises(b6.InvalidSpec):
        b6.bilinear_ratio_sweep([16, 32])


def test_integrals_and_checks():
    c = b6.check_weighted_convolution(0.0, 0.0, 1.0, 1.0)
    assert c["integral"] == pytest.approx(2.0)
    assert b6.cubic_bracket_integral(0, 0, 0, 1, 0.5) < 6
    results = b6.run_checks()
    assert results and all(r["passed"] for r in results)
