"""Term algebra, sampling, residual diagnostics, and file formats."""

import json

import numpy as np
import pytest

from conftest import crank_nicolson_evolve
from matterwave.specfun import free_kernel, moshinsky
from matterwave.units import natural, semiconductor
from matterwave.wavekit import (
    GaussianWave,
    KernelWave,
    MoshinskyWave,
    PiecewiseWave,
    PlaneWave,
    WaveField,
    WaveSum,
    grid2d_to_binary,
    grid2d_to_csv,
    mirror,
    sample,
    tdse_residual,
    wavefield_from_csv,
    wavefield_from_json,
    wavefield_to_csv,
    wavefield_to_json,
)

U = natural()
X = np.linspace(-7.0, 9.0, 257)


# ----------------------------------------------------------------------
# individual terms
# ----------------------------------------------------------------------


def test_plane_wave_value_and_gate():
    term = PlaneWave(coeff=0.5 - 0.25j, k=1.7, t0=0.3)
    t = 1.1
    expect = (0.5 - 0.25j) * np.exp(1j * 1.7 * X - 1j * 1.7**2 / 2 * (t - 0.3))
    np.testing.assert_allclose(term.evaluate(X, t, U), expect, rtol=1e-14)
    assert np.all(term.evaluate(X, 0.29, U) == 0)


def test_plane_wave_potential_phase():
    term = PlaneWave(coeff=1.0, k=2.0, v_pot=0.6)
    t = 0.8
    expect = np.exp(1j * 2.0 * X - 1j * (2.0 + 0.6) * t)
    np.testing.assert_allclose(term.evaluate(X, t, U), expect, rtol=1e-14)


def test_moshinsky_term_matches_direct_call():
    term = MoshinskyWave(coeff=1.0, k=1.3)
    np.testing.assert_allclose(
        term.evaluate(X, 0.9, U), moshinsky(X, 1.3, 0.9), rtol=1e-15
    )


def test_moshinsky_term_affine_argument_and_prefactor():
    # mirrored coordinate, co-moving shift, delayed start, plane prefactor
    term = MoshinskyWave(
        coeff=2.0j, k=0.8, x0=0.5, sx=-1.0, v=0.3, t0=0.2, k_pre=1.1
    )
    t = 1.4
    dt = t - 0.2
    direct = (
        2.0j
        * np.exp(1j * 1.1 * X - 1j * 1.1**2 * dt / 2)
        * moshinsky(-X + 0.3 * dt + 0.5, 0.8, dt)
    )
    np.testing.assert_allclose(term.evaluate(X, t, U), direct, rtol=1e-14)
    assert np.all(term.evaluate(X, 0.1, U) == 0)


def test_moshinsky_term_complex_time():
    term = MoshinskyWave(coeff=1.0, k=1.0, t_imag=-0.4)
    got = term.evaluate(X, 0.7, U)
    np.testing.assert_allclose(got, moshinsky(X, 1.0, 0.7 - 0.4j), rtol=1e-14)


def test_moshinsky_term_potential_phase():
    term = MoshinskyWave(coeff=1.0, k=1.0, v_pot=0.25)
    got = term.evaluate(X, 0.6, U)
    np.testing.assert_allclose(
        got, np.exp(-1j * 0.25 * 0.6) * moshinsky(X, 1.0, 0.6), rtol=1e-14
    )


def test_gaussian_initial_shape_and_norm():
    g = GaussianWave(coeff=1.0, k0=1.2, x0=-1.0, sigma=1.5)
    x = np.linspace(-30, 30, 4001)
    psi0 = g.evaluate(x, 0.0, U)
    expect = (2 * np.pi * 1.5**2) ** (-0.25) * np.exp(
        1j * 1.2 * x - (x + 1.0) ** 2 / (4 * 1.5**2)
    )
    np.testing.assert_allclose(psi0, expect, rtol=0, atol=1e-14)
    for t in (0.0, 3.7):
        n = np.trapezoid(np.abs(g.evaluate(x, t, U)) ** 2, x)
        assert abs(n - 1.0) < 1e-10


def test_kernel_term():
    term = KernelWave(coeff=3.0, x_src=1.0, t_src=0.5)
    got = term.evaluate(X, 2.0, U)
    np.testing.assert_allclose(got, 3.0 * free_kernel(X, 2.0, 1.0, 0.5), rtol=1e-15)
    assert np.all(term.evaluate(X, 0.5, U) == 0)


# ----------------------------------------------------------------------
# free-equation residuals (every closed form must solve the TDSE)
# ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "wave",
    [
        WaveSum((PlaneWave(1.0, 1.4),)),
        WaveSum((MoshinskyWave(1.0, 1.3),)),
        WaveSum((MoshinskyWave(0.7, 0.9, sx=-1.0, x0=0.3),)),
        # Galilean boost: argument drift v must pair with prefactor
        # k_pre = -m v / hbar for the product to stay a free solution
        WaveSum((MoshinskyWave(1.0, 0.9, x0=0.3, v=-1.1, k_pre=1.1),)),
        WaveSum((GaussianWave(1.0, 1.2, -1.0, 1.5),)),
        WaveSum((KernelWave(1.0, 0.0, 0.0),)),
        WaveSum((MoshinskyWave(1.0, 1.1), PlaneWave(-0.5, 2.0),
                 GaussianWave(0.25j, -0.7, 2.0, 1.0))),
    ],
)
def test_free_tdse_residual(wave):
    x = np.linspace(-4.0, 4.0, 41)
    # h = 1e-4 keeps second-difference rounding (~eps/h^2) at ~1e-8
    assert tdse_residual(wave, x, t=0.8, h=1e-4, dt=1e-5) < 1e-6


def test_constant_potential_residual():
    wave = WaveSum((PlaneWave(1.0, 1.4, v_pot=0.35),
                    MoshinskyWave(0.5, 0.9, v_pot=0.35)))
    x = np.linspace(-4.0, 4.0, 41)
    res = tdse_residual(wave, x, t=0.8, h=1e-4, dt=1e-5,
                        potential=lambda xx: 0.35 * np.ones_like(xx))
    assert res < 1e-6
    # and with the wrong potential the residual is O(V)
    res_bad = tdse_residual(wave, x, t=0.8, h=1e-4, dt=1e-5)
    assert res_bad > 1e-2


def test_residual_in_physical_units():
    u = semiconductor()
    wave = WaveSum((MoshinskyWave(1.0, 0.4),))  # k in 1/nm
    x = np.linspace(1.0, 20.0, 30)
    assert tdse_residual(wave, x, t=50.0, h=1e-3, dt=1e-3, units=u) < 1e-6


# ----------------------------------------------------------------------
# superposition algebra
# ----------------------------------------------------------------------


def test_wavesum_add_and_scale():
    a = WaveSum((PlaneWave(1.0, 1.0),))
    b = WaveSum((MoshinskyWave(1.0, 2.0),))
    both = a + b
    t = 0.5
    np.testing.assert_allclose(
        both(X, t, U), a(X, t, U) + b(X, t, U), rtol=1e-15
    )
    np.testing.assert_allclose(
        a.scaled(2.0 - 1.0j)(X, t, U), (2.0 - 1.0j) * a(X, t, U), rtol=1e-15
    )


def test_wavesum_shifted_delays_emission():
    a = WaveSum((MoshinskyWave(1.0, 1.5), KernelWave(0.5, 0.0, 0.0)))
    d = a.shifted(0.7)
    np.testing.assert_allclose(d(X, 1.9, U), a(X, 1.2, U), rtol=1e-14)
    assert np.all(d(X, 0.5, U) == 0)


def test_mirror_reflects_every_term_kind():
    wave = WaveSum(
        (
            PlaneWave(0.3, 1.1),
            MoshinskyWave(1.0, 0.9, x0=0.2, sx=1.0, v=0.1, k_pre=0.4),
            GaussianWave(0.5, 0.8, -1.5, 1.0),
            KernelWave(1.0, 2.0, 0.0),
        )
    )
    m = mirror(wave)
    t = 1.3
    np.testing.assert_allclose(m(X, t, U), wave(-X, t, U), rtol=1e-13)


def test_mirror_is_involution():
    wave = WaveSum((MoshinskyWave(1.0, 0.9, sx=-1.0, k_pre=0.4),))
    mm = mirror(mirror(wave))
    t = 0.8
    np.testing.assert_allclose(mm(X, t, U), wave(X, t, U), rtol=1e-15)


def test_piecewise_selection_and_mirror():
    left = WaveSum((PlaneWave(1.0, 1.0),))
    right = WaveSum((PlaneWave(2.0, -1.0),))
    pw = PiecewiseWave(((-5.0, 0.0, left), (0.0, 5.0, right)))
    x = np.array([-5.0, -1.0, -1e-12, 0.0, 1.0, 5.0])
    got = pw(x, 0.4, U)
    expect = np.concatenate([left(x[:3], 0.4, U), right(x[3:], 0.4, U)])
    np.testing.assert_allclose(got, expect, rtol=1e-15)
    assert pw(np.array([6.0, -8.0]), 0.4, U).tolist() == [0, 0]
    m = mirror(pw)
    # interval edges flip sides under reflection; compare off the seam,
    # where physical (continuous) piecewise solutions are anyway unique
    xin = np.array([-4.5, -1.0, -1e-9, 1e-9, 1.0, 4.5])
    np.testing.assert_allclose(m(xin, 0.4, U), pw(-xin, 0.4, U), rtol=1e-15)


# ----------------------------------------------------------------------
# sampled fields
# ----------------------------------------------------------------------


def test_sample_and_observables():
    k = 1.6
    wave = WaveSum((PlaneWave(1.0, k),))
    x = np.linspace(0.0, 10.0, 101)
    f = sample(wave, x, [0.0, 0.5], U, meta={"case": "plane"})
    assert f.psi.shape == (2, 101)
    np.testing.assert_allclose(f.density(), 1.0, rtol=1e-13)
    # current of a plane wave is hbar k/m |psi|^2 (edges use one-sided diff)
    j = f.current()
    np.testing.assert_allclose(j[:, 1:-1], k, rtol=1e-2)
    np.testing.assert_allclose(f.norm(), 10.0, rtol=1e-12)


def test_gaussian_norm_via_field():
    wave = WaveSum((GaussianWave(1.0, 0.7, 0.0, 1.0),))
    x = np.linspace(-25, 25, 2001)
    f = sample(wave, x, [0.0, 2.0], U)
    np.testing.assert_allclose(f.norm(), 1.0, atol=1e-9)


def test_sample_accepts_plain_callable():
    f = sample(lambda x, t: np.exp(1j * x) * np.exp(-1j * t), X, 0.3, U)
    np.testing.assert_allclose(f.psi[0], np.exp(1j * X - 0.3j), rtol=1e-15)


# ----------------------------------------------------------------------
# independent numerical route: Crank-Nicolson cross-checks
# ----------------------------------------------------------------------


def test_crank_nicolson_tracks_gaussian():
    g = GaussianWave(coeff=1.0, k0=1.2, x0=-6.0, sigma=1.5)
    x = np.linspace(-60.0, 60.0, 6001)
    dt, nsteps = 0.002, 1500  # t = 3.0
    psi_num = crank_nicolson_evolve(g.evaluate(x, 0.0, U), x, dt, nsteps)
    psi_exact = g.evaluate(x, dt * nsteps, U)
    err = np.sqrt(np.trapezoid(np.abs(psi_num - psi_exact) ** 2, x))
    assert err < 5e-3
    norm = np.trapezoid(np.abs(psi_num) ** 2, x)
    assert abs(norm - 1.0) < 1e-10


def test_crank_nicolson_harmonic_ground_state():
    # stationary state of V = x^2/2 only picks up the e^{-it/2} phase
    x = np.linspace(-12.0, 12.0, 2401)
    psi0 = np.pi**-0.25 * np.exp(-(x**2) / 2)
    psi = crank_nicolson_evolve(psi0, x, 0.001, 1000,
                                potential=lambda xx: 0.5 * xx**2)
    np.testing.assert_allclose(psi, psi0 * np.exp(-0.5j), atol=1e-5)


# ----------------------------------------------------------------------
# file formats
# ----------------------------------------------------------------------


def test_wavefield_csv_roundtrip(tmp_path):
    wave = WaveSum((MoshinskyWave(1.0, 1.0),))
    x = np.linspace(-2.0, 3.0, 17)
    f = sample(wave, x, [0.4, 0.9], U, meta={"case": "edge"})
    path = tmp_path / "field.csv"
    wavefield_to_csv(f, path)
    text = path.read_text()
    assert text.startswith("# matterwave wavefield v1")
    assert "# units: natural" in text
    assert "# meta case = edge" in text
    assert "x,t,re,im,abs2" in text
    back = wavefield_from_csv(path)
    np.testing.assert_array_equal(back.x, f.x)
    np.testing.assert_array_equal(back.t, f.t)
    np.testing.assert_array_equal(back.psi, f.psi)  # %.17g is exact for f64
    assert back.meta == {"case": "edge"}


def test_wavefield_csv_abs2_column(tmp_path):
    f = sample(WaveSum((PlaneWave(0.5, 1.0),)), np.array([0.0]), 0.0, U)
    path = tmp_path / "f.csv"
    wavefield_to_csv(f, path)
    row = path.read_text().strip().splitlines()[-1].split(",")
    assert float(row[4]) == pytest.approx(0.25, rel=1e-15)


def test_wavefield_json_roundtrip(tmp_path):
    wave = WaveSum((GaussianWave(1.0, 0.5, 0.0, 1.0),))
    f = sample(wave, np.linspace(-3, 3, 13), [0.0, 1.0], semiconductor(),
               meta={"note": "json"})
    path = tmp_path / "field.json"
    doc = wavefield_to_json(f, path)
    assert doc["schema"] == "matterwave.wavefield/1"
    back = wavefield_from_json(path)
    np.testing.assert_array_equal(back.psi, f.psi)
    assert back.units.name == "semiconductor"
    assert back.units.hbar == f.units.hbar
    assert back.meta == {"note": "json"}


def test_grid2d_csv_and_binary(tmp_path):
    xs = np.linspace(0, 1, 3)
    ps = np.linspace(-1, 1, 5)
    w = np.outer(xs, ps**2)
    csv_path = tmp_path / "wig.csv"
    grid2d_to_csv(csv_path, xs, ps, w, labels=("x", "p", "W"), units=U)
    lines = [l for l in csv_path.read_text().splitlines()
             if not l.startswith("#")]
    assert lines[0] == "x,p,W"
    assert len(lines) == 1 + 15
    bin_path, json_path = grid2d_to_binary(tmp_path / "wig", xs, ps, w)
    sidecar = json.loads(open(json_path).read())
    assert sidecar["shape"] == [3, 5]
    data = np.fromfile(bin_path, dtype=np.float64).reshape(3, 5)
    np.testing.assert_array_equal(data, w)


def test_wavefield_shape_validation():
    with pytest.raises(ValueError):
        WaveField(x=np.arange(4.0), t=np.array([0.0]),
                  psi=np.zeros((2, 3)), units=U)
