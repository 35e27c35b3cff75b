import cmath
import math

import numpy as np
import pytest

from lctlab import (AliasingError, Grid, LCTParams, ParameterError, SampledSignal, fourier,
                    frft, frft_params, g_alpha, g_alpha_natural, g_alpha_time, get_profile,
                    inverse_fourier, l_a, l_a_spectrum, lct_chirp, lct_direct, lct_on_grid,
                    lct_output_grid, lct_valid_mask, make_fixture, norm)


@pytest.fixture(scope="module")
def grid():
    return Grid(20.0, 4096)


@pytest.fixture(scope="module")
def gauss(grid):
    return make_fixture("gaussian", grid)


def gaussian_lct(A, B, C, D, u):
    """Closed form of D ∫ e^{-t²/2} e^{i(Au²/2 − But + Ct²/2)} dt."""
    q = 1 - 1j * C
    return D * np.sqrt(2 * np.pi / q) * np.exp(0.5j * A * u * u - B * B * u * u / (2 * q))


def hermite4(x):
    return (16 * x ** 4 - 48 * x ** 2 + 12) * np.exp(-x ** 2 / 2)


# -- parameters ------------------------------------------------------------------

def test_params_validation():
    with pytest.raises(ParameterError):
        LCTParams(1.0, 0.0, 1.0)
    with pytest.raises(ParameterError):
        LCTParams(math.nan, 1.0, 1.0)
    with pytest.raises(ParameterError):
        LCTParams.unitary(1.0, 0.0, 1.0)


@pytest.mark.parametrize("B", [-3.0, -0.2, 0.5, 2.0])
def test_unitary_normalizer_modulus(B):
    p = LCTParams.unitary(0.3, B, -0.1)
    assert p.is_unitary
    assert abs(p.D) == pytest.approx(math.sqrt(abs(B) / (2 * math.pi)))
    assert not LCTParams(0.3, B, -0.1, 1.0).is_unitary or abs(B) == pytest.approx(2 * math.pi)


def test_frft_params_examples():
    p = frft_params(math.pi / 2)
    assert (p.A, p.B, p.C) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
    assert p.D == pytest.approx(1 / math.sqrt(2 * math.pi))
    p = frft_params(math.pi / 4)
    assert (p.A, p.B, p.C) == pytest.approx((1.0, math.sqrt(2), 1.0))
    with pytest.raises(ParameterError):
        frft_params(0.0)
    # reduction to (−π, π]
    assert frft_params(math.pi / 3 + 2 * math.pi).A == pytest.approx(frft_params(math.pi / 3).A)


# -- LCT paths -------------------------------------------------------------------

@pytest.mark.parametrize("A, B, C", [(0.3, 1.2, -0.7), (-2.0, -0.5, 1.5), (0.0, 3.0, 0.0)])
def test_chirp_path_matches_closed_form(gauss, A, B, C):
    p = LCTParams.unitary(A, B, C)
    out = lct_chirp(p, gauss)
    assert out.grid == lct_output_grid(p, gauss.grid)
    u = out.grid.points
    assert np.max(np.abs(out.values - gaussian_lct(A, B, C, p.D, u))) < 1e-12


@pytest.mark.parametrize("method", ["direct", "czt", "auto"])
def test_direct_path_matches_closed_form(gauss, method):
    A, B, C = 0.7, -1.3, 0.4
    p = LCTParams(A, B, C, 1.0)
    u = np.linspace(-3, 3, 71)
    vals = lct_direct(p, gauss, u, method=method)
    assert np.max(np.abs(vals - gaussian_lct(A, B, C, 1.0, u))) < 1e-11


def test_direct_path_nonuniform_points(gauss):
    p = LCTParams(0.2, 0.9, -0.3, 1.0)
    u = np.array([-2.0, 0.1, 0.15, 1.7, 3.3])
    assert np.allclose(lct_direct(p, gauss, u), gaussian_lct(0.2, 0.9, -0.3, 1.0, u), atol=1e-11)
    with pytest.raises(ParameterError):
        lct_direct(p, gauss, u, method="czt")


def test_direct_path_flags_unresolved_points(gauss):
    p = LCTParams(0.0, 1.0, 0.0, 1.0)
    with pytest.raises(AliasingError):
        lct_direct(p, gauss, [gauss.grid.nyquist * 2])
    mask = lct_valid_mask(p, gauss, [0.0, gauss.grid.nyquist * 2])
    assert mask.tolist() == [True, False]


def test_lct_on_grid_zeroes_unresolved(gauss):
    p = LCTParams.unitary(0.0, 1.0, 0.0)
    wide = Grid(2 * gauss.grid.nyquist, 256)
    out, mask = lct_on_grid(p, gauss, wide)
    assert not mask.all() and mask.any()
    assert np.all(out.values[~mask] == 0)


def test_chirp_path_aliasing_guard(gauss):
    with pytest.raises(AliasingError):
        lct_chirp(LCTParams.unitary(0.0, 1.0, 200.0), gauss)


def test_chirp_twice_returns_to_input_grid(gauss):
    p = frft_params(math.pi / 4)
    once = lct_chirp(p, gauss)
    twice = lct_chirp(p, once)
    assert twice.grid == gauss.grid


# -- FRFT ------------------------------------------------------------------------

def test_frft_identity_and_fourier(gauss):
    assert np.array_equal(frft(0.0, gauss).values, gauss.values)
    assert np.array_equal(frft(2 * math.pi, gauss).values, gauss.values)
    F = fourier(gauss)
    assert norm(frft(math.pi / 2, gauss) - F) < 1e-13
    Fi = inverse_fourier(gauss)
    assert norm(frft(-math.pi / 2, gauss) - Fi) < 1e-13


def test_frft_parity_at_pi(grid):
    f = SampledSignal.from_function(grid, lambda t: (t + 1) * np.exp(-(t - 1) ** 2))
    out = frft(math.pi, f)
    expect = (1 - grid.points) * np.exp(-(grid.points + 1) ** 2)
    assert np.max(np.abs(out.values - expect)) < 1e-14


@pytest.mark.parametrize("alpha", [0.3, 1.0, -0.8, 2.5, -3.0])
def test_frft_hermite_eigenfunction(grid, alpha):
    h = make_fixture("hermite4", grid)
    out = frft(alpha, h)
    u = out.grid.points
    # Hermite function of degree n has eigenvalue e^{−inα}
    assert np.max(np.abs(out.values - cmath.exp(-4j * alpha) * hermite4(u))) < 1e-9


def test_frft_additivity(gauss):
    # the intermediate grid has Nyquist T·√2, so the input must stay narrow-band
    f = make_fixture("hermite4", gauss.grid) + gauss
    two = frft(math.pi / 4, frft(math.pi / 4, f))
    # two quarter turns land back on the input grid; both terms are fixed by F
    assert two.grid == f.grid
    assert norm(two - f) / norm(f) < 1e-10
    one = frft(math.pi / 2, f)
    u = one.grid.points
    assert np.max(np.abs(one.values - hermite4(u) - np.exp(-u ** 2 / 2))) < 1e-10


def test_frft_branch_window(gauss):
    # inside the window the exact limit is returned on the input grid
    assert frft(5e-4, gauss).grid == gauss.grid
    assert frft(0.05, gauss).grid != gauss.grid


# -- G operator ------------------------------------------------------------------

def test_g_identity_case(grid):
    f = make_fixture("bump", grid)
    # A = 0, B = 1, D = 1/√(2π) is the inverse Fourier transform of f̂, i.e. f
    # |u − t| <= T over the support [−2, 2] keeps u inside [−18, 18]
    sl = slice(512, 3584, 16)
    vals = g_alpha(0.0, 1.0, 1 / math.sqrt(2 * math.pi), f, grid.points[sl])
    assert np.max(np.abs(vals - f.values[sl])) < 1e-10


@pytest.mark.parametrize("A, B", [(0.5, 1.0), (-0.3, 2.0), (0.8, -0.7)])
def test_g_paths_agree(gauss, A, B):
    nat = g_alpha_natural(A, B, 1.0, gauss)
    sl = slice(1800, 2300, 10)
    u = nat.grid.points[sl]
    spectral = g_alpha(A, B, 1.0, gauss, u)
    time_form = g_alpha_time(A, B, 1.0, gauss, u)
    assert np.max(np.abs(spectral - nat.values[sl])) < 1e-10
    assert np.max(np.abs(spectral - time_form)) < 1e-10


def test_g_closed_form(gauss):
    # D ∫ e^{-ξ²/2} e^{i(Aξ² + Buξ)} dξ
    A, B = 0.4, 1.5
    u = np.linspace(-2, 2, 9)
    q = 1 - 2j * A
    exact = np.sqrt(2 * np.pi / q) * np.exp(-(B * u) ** 2 / (2 * q))
    assert np.max(np.abs(g_alpha(A, B, 1.0, gauss, u) - exact)) < 1e-12


def test_g_norm_scaling(gauss):
    for B in (0.5, 2.0, -1.0):
        G = g_alpha_natural(0.3, B, 1.0, gauss)
        assert norm(G) / norm(gauss) == pytest.approx(math.sqrt(2 * math.pi / abs(B)), rel=1e-12)


def test_g_time_form_needs_nonzero_A(gauss):
    with pytest.raises(ParameterError):
        g_alpha_time(0.0, 1.0, 1.0, gauss, [0.0])
    with pytest.raises(ParameterError):
        g_alpha(0.3, 0.0, 1.0, gauss, [0.0])


# -- L_a -------------------------------------------------------------------------

def test_l_a_identity_at_zero(gauss):
    prof = get_profile("one-plus-a", 0.0, 1.0)
    u = np.linspace(-3, 3, 13)
    assert np.allclose(l_a(0.0, prof, gauss, u), np.exp(-u ** 2 / 2), atol=1e-4)
    # on grid points the interpolation is exact
    pts = gauss.grid.points[1800:2300:50]
    assert np.allclose(l_a(0.0, prof, gauss, pts), gauss.values[1800:2300:50], atol=1e-15)


@pytest.mark.parametrize("a", [0.05, 0.3, 0.9])
def test_l_a_closed_form_and_paths(gauss, a):
    prof = get_profile("sqrt-one-plus-a2", 0.0, 1.0)
    b = math.sqrt(1 + a * a)
    u = np.linspace(-1.5, 1.5, 21)
    q = 1 - 2j * a
    exact = np.exp(-(b * u) ** 2 / (2 * q)) / np.sqrt(q)
    spectral = l_a(a, prof, gauss, u)
    time_form = l_a(a, prof, gauss, u, method="time")
    assert np.max(np.abs(spectral - exact)) < 1e-12
    assert np.max(np.abs(time_form - exact)) < 1e-10


def test_l_a_outside_interval(gauss):
    prof = get_profile("one-plus-a", 0.0, 0.5)
    with pytest.raises(ParameterError):
        l_a(0.7, prof, gauss, [0.0])
    with pytest.raises(ParameterError):
        l_a(0.2, prof, gauss, [0.0], method="bogus")


def test_l_a_spectrum_matches_l_a(gauss):
    prof = get_profile("one-plus-a", 0.0, 1.0)
    u = np.linspace(-1, 1, 40)
    assert np.allclose(l_a_spectrum(0.4, prof, fourier(gauss), u), l_a(0.4, prof, gauss, u), atol=1e-13)
