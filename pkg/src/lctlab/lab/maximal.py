"""Maximal function ``L_* f(u) = sup_a |L_a f(u)|`` over a finite parameter grid."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..engine import l_a
from ..errors import ParameterError
from ..profiles import BProfile
from ..signals import NormSpec, SampledSignal, holder_seminorm, norm
from .report import ExperimentReport, fit_power_law

__all__ = [
    "LP_NOTE",
    "MaximalQuery",
    "ae_convergence_fraction",
    "geometric_a_grid",
    "holder_maximal_growth",
    "lp_norm",
    "maximal_estimate",
    "maximal_values",
]

LP_NOTE = "weak-type L^{1,inf} norms are replaced by L^p norms on the finite u-grid"


def geometric_a_grid(profile: BProfile, n: int) -> np.ndarray:
    """``a₀ + δ·2^{−j}``, ``j = 0..n−1``: decreasing towards ``a₀``."""
    if n < 1:
        raise ParameterError("need at least one grid point")
    return profile.a0 + profile.delta * 2.0 ** -np.arange(n)


@dataclass(frozen=True)
class MaximalQuery:
    """Profile, parameter grid, evaluation points and the exponent ``p`` of the norm."""

    profile: BProfile
    a_grid: tuple
    u_grid: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        a = tuple(float(x) for x in np.atleast_1d(self.a_grid))
        if not a:
            raise ParameterError("a_grid is empty")
        for x in a:
            if not self.profile.contains(x):
                lo, hi = self.profile.interval
                raise ParameterError(f"a = {x} outside the profile interval [{lo}, {hi}]")
        object.__setattr__(self, "a_grid", a)
        u = np.atleast_1d(np.asarray(self.u_grid, dtype=float))
        if u.ndim != 1 or u.size == 0 or not np.all(np.isfinite(u)):
            raise ParameterError("u_grid must be a finite non-empty 1-D array")
        u.setflags(write=False)
        object.__setattr__(self, "u_grid", u)
        p = float(self.p)
        if not (p >= 1.0):
            raise ParameterError("p must be >= 1 (or inf)")
        object.__setattr__(self, "p", p)

    def echo(self) -> dict:
        u = self.u_grid
        return {
            "profile": self.profile.name,
            "interval": list(self.profile.interval),
            "a_grid": list(self.a_grid),
            "u_grid": {"start": float(u[0]), "stop": float(u[-1]), "count": int(u.size)},
            "p": self.p if math.isfinite(self.p) else "inf",
        }


def lp_norm(values: np.ndarray, u: np.ndarray, p: float) -> float:
    """Discrete ``L^p`` norm with trapezoid-style cell widths from ``u``."""
    v = np.abs(np.asarray(values))
    if not math.isfinite(p):
        return float(v.max())
    w = np.gradient(u) if u.size > 1 else np.ones(1)
    return float(np.sum(w * v ** p) ** (1.0 / p))


def maximal_values(q: MaximalQuery, f: SampledSignal, *, method: str = "spectral",
                   check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(L_*, a_sel)``: the pointwise max and the maximizing ``a`` for each ``u``.

    Ties keep the first maximizer in ``a_grid`` order, so adding points to
    ``a_grid`` never lowers ``L_*``.
    """
    best = np.full(q.u_grid.size, -1.0)
    arg = np.full(q.u_grid.size, np.nan)
    for a in q.a_grid:
        v = np.abs(l_a(a, q.profile, f, q.u_grid, method=method, check=check))
        upd = v > best
        best[upd] = v[upd]
        arg[upd] = a
    return best, arg


def maximal_estimate(q: MaximalQuery, f: SampledSignal, *, method: str = "spectral",
                     check: bool = True) -> ExperimentReport:
    """Estimate ``L_* f`` on ``q.u_grid`` and its ``L^p`` norm.

    The selected ``a(u)`` column materialises the linearising function of
    the maximal operator.  The supremum over a continuum is approximated
    from below by the finite ``a_grid``.
    """
    Ls, arg = maximal_values(q, f, method=method, check=check)
    rep = ExperimentReport("maximal", ["u", "L_star", "a_selected"],
                           config={**q.echo(), "method": method}, notes=[LP_NOTE])
    for u, v, a in zip(q.u_grid, Ls, arg):
        rep.add_row(float(u), float(v), float(a))
    rep.summary["lp_norm"] = lp_norm(Ls, q.u_grid, q.p)
    rep.summary["sup"] = float(Ls.max())
    rep.curves["L_star"] = (q.u_grid.copy(), Ls)
    return rep


def holder_maximal_growth(f: SampledSignal, profile: BProfile, a_grid, *, radii=(1, 2, 4, 8),
                          du: float = 1.0 / 256, support=(0.0, 1.0),
                          method: str = "time") -> ExperimentReport:
    """Growth of ``sup_{|u|<=R} L_* f`` in ``R`` for a compactly supported Hölder function.

    One u-grid on ``[−R_max, R_max]`` with step ``du`` is used for every
    radius, so the sequence of suprema is non-decreasing.  The report
    records the fitted exponent and the measured constant
    ``sup / ((1 + |d − c|)·R^{1/2}·[f]_{1/2})``.
    """
    radii = tuple(float(r) for r in radii)
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ParameterError("radii must be increasing with at least two entries")
    R = radii[-1]
    n = int(round(2 * R / du))
    u = -R + du * np.arange(n + 1)
    q = MaximalQuery(profile, tuple(a_grid), u, math.inf)
    Ls, arg = maximal_values(q, f, method=method)
    semi = holder_seminorm(f, 0.5)
    c, d = support
    rep = ExperimentReport("maximal-holder", ["R", "sup_L_star", "a_at_sup", "constant"],
                           config={**q.echo(), "radii": list(radii), "du": du,
                                   "support": list(support), "method": method},
                           notes=[LP_NOTE])
    sups = []
    for r in radii:
        m = np.abs(u) <= r + 1e-12
        j = int(np.argmax(np.where(m, Ls, -1.0)))
        sups.append(float(Ls[j]))
        const = sups[-1] / ((1 + abs(d - c)) * math.sqrt(r) * semi) if semi > 0 else math.nan
        rep.add_row(r, sups[-1], float(arg[j]), const)
    fit = fit_power_law(radii, sups)
    rep.fits["sup_growth"] = fit
    rep.summary["holder_seminorm"] = semi
    rep.summary["l2_norm"] = norm(f, NormSpec.l2())
    rep.flags["within_half_power"] = bool(0.0 - 1e-12 <= fit.exponent <= 0.6)
    rep.curves["sup_growth"] = (np.asarray(radii), np.asarray(sups))
    return rep


def ae_convergence_fraction(f: SampledSignal, profile: BProfile, a_sequence, eps: float = 1e-3, *,
                            u_points=None, method: str = "spectral") -> ExperimentReport:
    """Fraction of evaluation points with ``|L_a f(u) − f(u)| > eps`` for each ``a``.

    ``u_points`` defaults to every grid point in the middle half of the
    grid.  Requires ``b(0) = 1`` so that ``L_0`` is the identity.
    """
    if not profile.is_identity_at_zero:
        raise ParameterError("a.e. convergence to f needs a profile with b(0) = 1")
    a_seq = [float(a) for a in a_sequence]
    if len(a_seq) < 2:
        raise ParameterError("need at least two values of a")
    if u_points is None:
        t = f.grid.points
        u = t[np.abs(t) <= 0.5 * f.grid.T]
    else:
        u = np.atleast_1d(np.asarray(u_points, dtype=float))
    f_u = l_a(0.0, profile, f, u)
    rep = ExperimentReport("ae-fraction", ["a", "fraction", "max_deviation"],
                           config={"profile": profile.name, "a_sequence": a_seq, "eps": eps,
                                   "n_points": int(u.size), "method": method})
    fracs = []
    for a in a_seq:
        dev = np.abs(l_a(a, profile, f, u, method=method) - f_u)
        fracs.append(float(np.mean(dev > eps)))
        rep.add_row(a, fracs[-1], float(dev.max()))
    rep.curves["fraction"] = (np.asarray(a_seq), np.asarray(fracs))
    rep.flags["fraction_to_zero"] = fracs[-1] == 0.0
    rep.flags["non_increasing"] = bool(np.all(np.diff(fracs) <= 0))
    return rep
