import math

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from lctlab import (DegenerateParameterError, Grid, LCTParams, NormSpec, SampledSignal,
                    SubgroupSpec, compose, family_params, fourier, get_profile, group_residual,
                    inverse_fourier, lct_chirp, norm)
from lctlab.lab import ExperimentReport, MaximalQuery, geometric_a_grid, maximal_values

GRID = Grid(20.0, 1024)

finite = st.floats(-3.0, 3.0, allow_nan=False)
nonzero_B = st.one_of(st.floats(-3.0, -0.3), st.floats(0.3, 3.0))
coeff = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
# away from underflow so |c|·‖f‖ stays a normal float
scalar = coeff.filter(lambda c: abs(c) > 1e-100)


@st.composite
def packets(draw):
    """Sum of up to three modulated Gaussians, well inside the grid and its Nyquist band."""
    t = GRID.points
    vals = np.zeros(t.size, dtype=complex)
    for _ in range(draw(st.integers(1, 3))):
        c = draw(coeff)
        m = draw(st.floats(-5.0, 5.0))
        w = draw(st.floats(0.5, 2.0))
        k = draw(st.floats(-5.0, 5.0))
        vals += c * np.exp(-((t - m) / w) ** 2 / 2 + 1j * k * t)
    assume(np.max(np.abs(vals)) > 1e-3)
    return SampledSignal(GRID, vals)


@given(packets())
def test_parseval(f):
    assert math.isclose(norm(fourier(f)), norm(f), rel_tol=1e-10)


@given(packets())
def test_fourier_round_trip(f):
    back = inverse_fourier(fourier(f))
    assert back.grid == f.grid
    assert np.max(np.abs(back.values - f.values)) <= 1e-12 * np.max(np.abs(f.values)) + 1e-15


@given(packets(), scalar, st.sampled_from([NormSpec.l2(), NormSpec.weighted(1.5),
                                          NormSpec.sobolev(0.7), NormSpec.holder(0.5)]))
def test_norm_homogeneity(f, c, spec):
    assert math.isclose(norm(f * c, spec), abs(c) * norm(f, spec), rel_tol=1e-9, abs_tol=1e-300)


@given(packets(), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_sobolev_monotone_in_s(f, s1, s2):
    lo, hi = sorted((s1, s2))
    assert norm(f, NormSpec.sobolev(lo)) <= norm(f, NormSpec.sobolev(hi)) * (1 + 1e-12)


@given(packets(), packets(), coeff, coeff, finite, nonzero_B, st.floats(-1.0, 1.0))
def test_lct_linearity(f, g, a, b, A, B, C):
    p = LCTParams.unitary(A, B, C)
    lhs = lct_chirp(p, f * a + g * b)
    rhs = lct_chirp(p, f) * a + lct_chirp(p, g) * b
    scale = 1 + norm(lhs)
    assert norm(lhs - rhs) <= 1e-12 * scale


@given(packets(), finite, nonzero_B, st.floats(-1.0, 1.0))
def test_lct_unitarity(f, A, B, C):
    out = lct_chirp(LCTParams.unitary(A, B, C), f)
    assert math.isclose(norm(out), norm(f), rel_tol=1e-10)


@given(st.sampled_from(["I", "II", "III"]), st.floats(0.1, 1.4), st.floats(0.1, 1.4),
       st.floats(0.5, 2.0), st.floats(-1.0, 1.0))
def test_group_law(family, alpha, beta, lam, gamma):
    spec = SubgroupSpec(family, 1.0, lam, gamma)
    pa = family_params(spec, alpha + beta)
    scale = 1 + max(abs(pa.A), abs(pa.B), abs(pa.C))
    assert group_residual(spec, alpha, beta).max() <= 1e-10 * scale


def _params(draw):
    return LCTParams.unitary(draw(finite), draw(nonzero_B), draw(finite))


@given(st.data())
def test_compose_associative(data):
    p, q, r = (_params(data.draw) for _ in range(3))
    try:
        pq, qr = compose(p, q), compose(q, r)
        left, right = compose(pq, r), compose(p, qr)
    except DegenerateParameterError:
        assume(False)
    # near-cancelling A_inner + C_outer makes composition ill-conditioned
    assume(min(abs(q.A + p.C), abs(r.A + pq.C), abs(r.A + q.C), abs(qr.A + p.C)) > 0.2)
    scale = 1 + max(abs(left.A), abs(left.B), abs(left.C), abs(left.D))
    for x, y in [(left.A, right.A), (left.B, right.B), (left.C, right.C), (left.D, right.D)]:
        assert abs(x - y) <= 1e-8 * scale


@given(st.sampled_from(["I", "II", "III"]), st.floats(0.05, 1.5), st.floats(0.2, 3.0),
       st.floats(-2.0, 2.0), st.floats(0.5, 2.0))
def test_family_structure(family, alpha, lam, gamma, omega):
    p = family_params(SubgroupSpec(family, omega, lam, gamma), alpha)
    assert math.isclose(p.C - p.A, 2 * gamma, rel_tol=1e-9, abs_tol=1e-9 * (1 + abs(p.A)))
    assert math.isclose(abs(p.D), math.sqrt(abs(p.B) / (2 * math.pi)), rel_tol=1e-12)


@given(st.sampled_from(["one-plus-a", "sqrt-one-plus-a2", "constant-one"]),
       st.floats(0.0, 1.0), st.floats(0.01, 2.0), st.integers(1, 30))
def test_geometric_grid(name, a0, delta, n):
    prof = get_profile(name, a0, delta)
    a = geometric_a_grid(prof, n)
    assert a.size == n
    assert np.all(np.diff(a) < 0)
    assert np.all(a > a0) and all(prof.contains(x) for x in a)


@given(st.lists(st.floats(0.01, 0.3), min_size=1, max_size=4, unique=True),
       st.lists(st.floats(0.01, 0.3), min_size=1, max_size=3))
def test_maximal_monotone_in_a_grid(base, extra):
    f = SampledSignal.from_function(GRID, lambda t: np.exp(-t * t / 2))
    prof = get_profile("one-plus-a", 0.0, 1.0)
    u = np.linspace(-2, 2, 9)
    small, _ = maximal_values(MaximalQuery(prof, tuple(base), u), f)
    big, _ = maximal_values(MaximalQuery(prof, tuple(base + extra), u), f)
    assert np.all(big >= small)


@given(st.lists(st.tuples(st.floats(allow_nan=False), st.integers(), st.booleans()), max_size=10))
def test_report_csv_deterministic(rows):
    def build():
        rep = ExperimentReport("probe", ["x", "n", "ok"])
        for r in rows:
            rep.add_row(*r)
        return rep
    a, b = build(), build()
    assert a.to_csv() == b.to_csv()
    assert a.to_json() == b.to_json()
    # 17 significant digits round-trip floats exactly
    body = a.to_csv().splitlines()[3:]
    for line, (x, _, _) in zip(body, rows):
        assert float(line.split(",")[0]) == x
