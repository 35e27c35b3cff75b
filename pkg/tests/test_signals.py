import json
import math
import warnings

import numpy as np
import pytest
from scipy.integrate import quad

from lctlab import (AliasingError, AliasingWarning, AliasPolicy, Grid, NormSpec, ParameterError,
                    SampledSignal, bandwidth, boundary_mass, fourier, holder_fixture, holder_seminorm,
                    inverse_fourier, load_signal, make_fixture, make_grid, norm, sobolev_norm_spectrum,
                    support_radius)
from lctlab.fixtures import smooth_bump


@pytest.fixture
def grid():
    return Grid(20.0, 4096)


def test_grid_geometry(grid):
    assert grid.spacing == pytest.approx(40 / 4096)
    t = grid.points
    assert t[0] == -20.0 and t[-1] == pytest.approx(20 - grid.spacing)
    assert grid.nyquist == pytest.approx(math.pi / grid.spacing)
    rec = grid.reciprocal()
    assert rec.T == pytest.approx(grid.nyquist) and rec.N == grid.N
    # the reciprocal of the reciprocal is the original grid
    assert rec.reciprocal() == grid


@pytest.mark.parametrize("T, N", [(1.0, 100), (0.0, 64), (-1.0, 64), (math.inf, 64)])
def test_grid_rejects_bad_input(T, N):
    with pytest.raises(ParameterError):
        Grid(T, N)


def test_make_grid_minimum_size():
    with pytest.raises(ParameterError):
        make_grid(1.0, 4)
    assert make_grid(1.0, 8).N == 8


def test_signal_is_immutable(grid):
    f = make_fixture("gaussian", grid)
    with pytest.raises(ValueError):
        f.values[0] = 1.0
    with pytest.raises(AttributeError):
        f.grid = Grid(1.0, 8)


def test_signal_rejects_nonfinite_and_wrong_length(grid):
    with pytest.raises(ParameterError):
        SampledSignal(grid, np.full(grid.N, np.nan))
    with pytest.raises(ParameterError):
        SampledSignal(grid, np.zeros(grid.N - 1))


def test_signal_copies_input(grid):
    raw = np.ones(grid.N)
    f = SampledSignal(grid, raw)
    raw[:] = 7.0
    assert np.all(f.values == 1.0)


def test_json_roundtrip(tmp_path):
    g = Grid(4.0, 64)
    f = SampledSignal(g, np.exp(1j * g.points) * np.exp(-g.points ** 2))
    path = tmp_path / "f.json"
    f.to_json(path)
    back = load_signal(path)
    assert back.grid == g
    assert np.array_equal(back.values, f.values)


def test_malformed_signal_document():
    with pytest.raises(ParameterError):
        SampledSignal.from_dict({"grid": {"T": 1.0}, "values": []})
    with pytest.raises(ParameterError):
        SampledSignal.from_dict({"grid": {"T": 1.0, "N": 8}, "values": [1, 2, 3, 4, 5, 6, 7, 8]})


def test_csv_format():
    g = Grid(1.0, 8)
    text = SampledSignal(g, np.arange(8) + 0.5j).to_csv()
    lines = text.splitlines()
    assert lines[0] == "t,re,im"
    assert len(lines) == 9
    assert lines[1] == "-1,0,0.5"


def test_fourier_gaussian_closed_form(grid):
    f = make_fixture("gaussian", grid)
    F = fourier(f)
    xi = F.grid.points
    assert np.max(np.abs(F.values - np.exp(-xi ** 2 / 2))) < 1e-12


def test_fourier_bump_against_quadrature(grid):
    f = make_fixture("bump", grid)
    F = fourier(f)
    xi = F.grid.points
    for k in (0, 2048, 2048 + 37, 2048 - 250):
        re = quad(lambda t: smooth_bump(np.array([t]), -2, 2)[0] * math.cos(xi[k] * t), -2, 2, limit=200)[0]
        im = -quad(lambda t: smooth_bump(np.array([t]), -2, 2)[0] * math.sin(xi[k] * t), -2, 2, limit=200)[0]
        assert F.values[k] == pytest.approx((re + 1j * im) / math.sqrt(2 * math.pi), abs=1e-10)


def test_fourier_roundtrip_and_hermite_eigenvalue(grid):
    h = make_fixture("hermite4", grid)
    F = fourier(h)
    # H_4 e^{-t²/2} has eigenvalue (−i)^4 = 1
    xi = F.grid.points
    exact = (16 * xi ** 4 - 48 * xi ** 2 + 12) * np.exp(-xi ** 2 / 2)
    assert np.max(np.abs(F.values - exact)) < 1e-10
    back = inverse_fourier(F)
    assert back.grid == grid
    assert np.max(np.abs(back.values - h.values)) < 1e-12


def test_boundary_policy(grid):
    wide = SampledSignal.from_function(grid, lambda t: np.exp(-t ** 2 / 200))
    assert boundary_mass(wide) > 1e-4
    with pytest.raises(AliasingError):
        fourier(wide)
    mid = SampledSignal.from_function(grid, lambda t: np.exp(-t ** 2 / 40))
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        fourier(mid, AliasPolicy(warn=1e-12, error=1.0))
    assert any(issubclass(w.category, AliasingWarning) for w in rec)


def test_alias_policy_validation():
    with pytest.raises(ParameterError):
        AliasPolicy(warn=1e-2, error=1e-3)


def test_support_and_bandwidth(grid):
    b = make_fixture("bump", grid)
    assert 1.9 < support_radius(b) <= 2.0
    g = make_fixture("gaussian", grid)
    # e^{-t²/2} drops below 1e-8 at t = √(2 ln 1e8)
    assert support_radius(g) == pytest.approx(math.sqrt(2 * math.log(1e8)), abs=2 * grid.spacing)
    assert bandwidth(g) == pytest.approx(support_radius(g), rel=0.02)


def test_l2_norm_gaussian(grid):
    assert norm(make_fixture("gaussian", grid)) == pytest.approx(math.pi ** 0.25, rel=1e-14)


def test_weighted_norm_oracle(grid):
    f = make_fixture("gaussian", grid)
    exact = math.sqrt(quad(lambda t: (1 + t * t) ** 1.5 * math.exp(-t * t), -np.inf, np.inf)[0])
    assert norm(f, NormSpec.weighted(1.5)) == pytest.approx(exact, rel=1e-12)


def test_sobolev_norm_oracle(grid):
    f = make_fixture("gaussian", grid)
    exact = math.sqrt(quad(lambda x: (1 + x * x) ** 0.75 * math.exp(-x * x), -np.inf, np.inf)[0])
    assert norm(f, NormSpec.sobolev(0.75)) == pytest.approx(exact, rel=1e-12)
    assert sobolev_norm_spectrum(fourier(f), 0.75) == pytest.approx(exact, rel=1e-12)


def test_holder_seminorm_of_fixtures():
    g = Grid(2.0, 2 ** 14)
    # √t-type profiles have seminorm 1, attained at the support edge or the cusp
    for name in ("sqrt-arch", "sqrt-tent", "cusp-bump"):
        s = holder_seminorm(holder_fixture(name, g), 0.5)
        assert 0.99 <= s <= 1.0 + 1e-12
    assert holder_seminorm(SampledSignal(g, np.zeros(g.N)), 0.5) == 0.0


def test_holder_seminorm_lipschitz_function():
    g = Grid(4.0, 1024)
    f = SampledSignal.from_function(g, lambda t: np.clip(1 - np.abs(t), 0, None))
    # slope 1: the order-1 seminorm is 1 at every dyadic separation
    assert holder_seminorm(f, 1.0) == pytest.approx(1.0)


@pytest.mark.parametrize("kind, param", [("L1", 0), ("WeightedL2", -1), ("HolderSeminorm", 0),
                                         ("HolderSeminorm", 1.5), ("Sobolev", -0.1)])
def test_normspec_validation(kind, param):
    with pytest.raises(ParameterError):
        NormSpec(kind, param)


def test_norm_spec_constructors_roundtrip_to_norm(grid):
    f = make_fixture("bump", grid)
    assert norm(f, NormSpec.l2()) == pytest.approx(norm(f))
    assert norm(f, NormSpec.holder(0.5)) == pytest.approx(holder_seminorm(f, 0.5))


def test_signal_arithmetic(grid):
    f = make_fixture("gaussian", grid)
    h = make_fixture("bump", grid)
    assert np.allclose((f + h).values, f.values + h.values)
    assert np.allclose((2 * f - h).values, 2 * f.values - h.values)
    with pytest.raises(ParameterError):
        f + make_fixture("gaussian", Grid(10.0, 4096))


def test_to_dict_is_json_serializable():
    f = make_fixture("gaussian", Grid(4.0, 16))
    json.dumps(f.to_dict())
