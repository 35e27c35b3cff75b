import cmath
import math

import numpy as np
import pytest

from lctlab import (DegenerateParameterError, Grid, LCTParams, ParameterError, SubgroupSpec,
                    compose, d_solution, family_params, frft_params, group_residual, make_fixture,
                    operator_group_check)


def test_spec_validation():
    with pytest.raises(ParameterError):
        SubgroupSpec("IV")
    with pytest.raises(ParameterError):
        SubgroupSpec("I", lam=0.0)
    with pytest.raises(ParameterError):
        SubgroupSpec("III", omega=0.0)
    # ω is ignored for the parabolic family
    SubgroupSpec("II", omega=0.0)


def test_spec_dict_roundtrip():
    s = SubgroupSpec("III", 1.5, -2.0, 0.25)
    d = s.to_dict()
    assert d["lambda"] == -2.0
    assert SubgroupSpec.from_dict(d) == s


def test_family_params_examples():
    p = family_params(SubgroupSpec("I"), math.pi / 2)
    assert (p.A, p.B, p.C) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
    p = family_params(SubgroupSpec("II"), 1.0)
    assert (p.A, p.B, p.C) == pytest.approx((1.0, 1.0, 1.0))
    p = family_params(SubgroupSpec("III"), 1.0)
    coth, csch = 1 / math.tanh(1), 1 / math.sinh(1)
    assert (p.A, p.B, p.C) == pytest.approx((coth, csch, coth), rel=1e-15)
    assert (p.A, p.B, p.C) == pytest.approx((1.313035, 0.850918, 1.313035), abs=5e-7)


def test_family_params_knobs():
    lam, gam, om, a = 2.0, 0.3, 1.7, 0.4
    p = family_params(SubgroupSpec("I", om, lam, gam), a)
    cot, csc = 1 / math.tan(om * a), 1 / math.sin(om * a)
    assert (p.A, p.B, p.C) == pytest.approx((cot / lam - gam, csc / lam, cot / lam + gam))
    p = family_params(SubgroupSpec("II", lam=lam, gamma=gam), a)
    assert (p.A, p.B, p.C) == pytest.approx((1 / (lam * a) - gam, 1 / (lam * a), 1 / (lam * a) + gam))


@pytest.mark.parametrize("fam, alpha", [("I", 0.0), ("I", math.pi), ("I", -2 * math.pi + 1e-8),
                                        ("II", 0.0), ("III", 5e-7)])
def test_poles_are_degenerate(fam, alpha):
    with pytest.raises(DegenerateParameterError):
        family_params(SubgroupSpec(fam), alpha)


def test_compose_examples():
    q = family_params(SubgroupSpec("I"), math.pi / 4)
    r = compose(q, q)
    assert (r.A, r.B, r.C) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
    e1 = LCTParams(1.0, 1.0, 1.0)
    r = compose(e1, e1)
    assert (r.A, r.B, r.C) == pytest.approx((0.5, 0.5, 0.5))


def test_compose_frft_normalizers():
    # FRFT normalizers compose to the FRFT normalizer of the summed order
    for a, b in [(0.3, 0.5), (1.0, 1.2), (-0.4, 0.9)]:
        r = compose(frft_params(a), frft_params(b))
        p = frft_params(a + b)
        assert (r.A, r.B, r.C) == pytest.approx((p.A, p.B, p.C))
        assert r.D == pytest.approx(p.D)


def test_compose_random_family_iii():
    rng = np.random.default_rng(1)
    spec = SubgroupSpec("III", 0.8, 1.3, -0.2)
    for a, b in rng.uniform(0.2, 2.0, size=(20, 2)):
        r = compose(family_params(spec, b), family_params(spec, a))
        p = family_params(spec, a + b)
        assert np.allclose([r.A, r.B, r.C], [p.A, p.B, p.C], atol=1e-9, rtol=0)


def test_compose_non_composable():
    # A_inner + C_outer = 0
    with pytest.raises(DegenerateParameterError):
        compose(LCTParams(1.0, 1.0, -1.0), LCTParams(1.0, 2.0, 3.0))


def test_group_residual_examples():
    assert group_residual(SubgroupSpec("I"), 0.3, 0.4).max() <= 1e-12
    assert group_residual(SubgroupSpec("II", lam=2.0, gamma=1.0), 0.5, 0.25).max() <= 1e-12
    with pytest.raises(DegenerateParameterError):
        group_residual(SubgroupSpec("I"), 0.3, math.pi - 0.3)


def test_group_residual_record():
    r = group_residual(SubgroupSpec("III"), 0.4, 0.7)
    d = r.to_dict()
    assert set(d) == {"residual_A", "residual_B", "residual_C", "residual_D"}
    assert all(v >= 0 and math.isfinite(v) for v in d.values())


def test_d_solution_examples():
    assert abs(d_solution(SubgroupSpec("I"), math.pi / 2)) == pytest.approx(math.sqrt(1 / (2 * math.pi)))
    assert abs(d_solution(SubgroupSpec("II"), 2.0)) == pytest.approx(math.sqrt(1 / (4 * math.pi)))
    expect = math.sqrt(1 / math.sinh(1) / (2 * math.pi))
    assert abs(d_solution(SubgroupSpec("III"), 1.0)) == pytest.approx(expect, rel=1e-14)
    assert expect == pytest.approx(0.36800, abs=1e-5)


@pytest.mark.parametrize("fam", ["I", "II", "III"])
def test_d_solution_is_multiplicative_with_compose(fam):
    spec = SubgroupSpec(fam, 1.1, -0.7, 0.2)
    for a, b in [(0.3, 0.4), (0.7, 0.2)]:
        r = compose(family_params(spec, b), family_params(spec, a))
        assert r.D == pytest.approx(d_solution(spec, a + b), abs=1e-12)


def test_family_i_matches_frft():
    for a in (0.2, 1.3, 2.9, -1.0):
        p, q = family_params(SubgroupSpec("I"), a), frft_params(a)
        assert (p.A, p.B, p.C) == pytest.approx((q.A, q.B, q.C))
        assert p.D == pytest.approx(q.D)


def test_operator_check_examples():
    g = make_fixture("gaussian", Grid(20.0, 4096))
    assert operator_group_check(SubgroupSpec("I"), math.pi / 6, math.pi / 6, g) <= 1e-3
    assert operator_group_check(SubgroupSpec("I"), 0.7, 0.0, g) <= 1e-6
    assert operator_group_check(SubgroupSpec("II"), 0.0, 0.0, g) == 0.0
    # the bump's broad spectrum needs a wide intermediate grid
    b = make_fixture("bump", Grid(320.0, 32768))
    assert operator_group_check(SubgroupSpec("III"), 0.4, 0.7, b) <= 1e-3


def test_operator_check_pole():
    g = make_fixture("gaussian", Grid(20.0, 4096))
    with pytest.raises(DegenerateParameterError):
        operator_group_check(SubgroupSpec("I"), 1.0, math.pi - 1.0, g)


def test_unitary_convention_of_family_d():
    for fam in ("I", "II", "III"):
        p = family_params(SubgroupSpec(fam, 0.9, 1.4, 0.1), 0.6)
        assert p.is_unitary
        assert cmath.isfinite(p.D)
