"""A compactly supported C^{1/2} function whose ``L_a f(u₀)`` does not tend to ``f(u₀)``.

The truncated series is

    f_K(t) = Σ_{k=1}^{K} √(2a_k) · exp(i(b_k u₀ − t)²/(4a_k)) · φ(t),
    a_k = 2^{−k},  b_k = b(a_k),

with ``φ`` a smooth bump on ``[1/4, 1/2]`` and ``u₀`` outside its support,
so ``f_K(u₀) = 0``.  The ``k = n`` term of ``L_{a_n} f_K(u₀)`` undoes its
own chirp and leaves a multiple of ``∫φ``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..engine import l_a
from ..errors import ParameterError, ResolutionError
from ..fixtures import smooth_bump
from ..profiles import BProfile
from ..signals import Grid, SampledSignal, holder_seminorm
from .report import ExperimentReport

__all__ = [
    "CounterexampleSpec",
    "counterexample_report",
    "counterexample_values",
    "holder_counterexample",
    "make_phi",
]

PHI_SUPPORT = (0.25, 0.5)


def make_phi(grid: Grid, integral: float = 0.1) -> SampledSignal:
    """Smooth bump on ``[1/4, 1/2]`` scaled so its grid integral equals ``integral``."""
    raw = smooth_bump(grid.points, *PHI_SUPPORT)
    total = grid.spacing * float(raw.sum())
    if total == 0.0:
        raise ResolutionError("grid does not resolve the bump support")
    return SampledSignal(grid, raw * (integral / total))


@dataclass(frozen=True)
class CounterexampleSpec:
    """Truncation order, base point, bump and profile of the series."""

    K: int
    u0: float
    phi: SampledSignal = field(repr=False)
    profile: BProfile

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 1:
            raise ParameterError("K must be a positive integer")
        object.__setattr__(self, "K", int(self.K))
        M = self.profile.bound
        if not (0.0 < self.u0 < 1.0 / (80.0 * M)):
            raise ParameterError(f"u0 must lie in (0, 1/(80M)) = (0, {1 / (80 * M):.4g})")
        t = self.phi.grid.points
        outside = (t < PHI_SUPPORT[0]) | (t > PHI_SUPPORT[1])
        if np.any(self.phi.values[outside] != 0):
            raise ParameterError("phi must vanish outside [1/4, 1/2]")
        if not self.profile.contains(2.0 ** -self.K) or not self.profile.contains(0.5):
            raise ParameterError("profile interval must contain every a_k = 2^-k")

    @property
    def a(self) -> np.ndarray:
        return 2.0 ** -np.arange(1, self.K + 1)

    def echo(self) -> dict:
        g = self.phi.grid
        return {"K": self.K, "u0": self.u0, "profile": self.profile.name,
                "phi_integral": float(g.spacing * self.phi.values.real.sum()),
                "grid": g.to_dict()}


def holder_counterexample(spec: CounterexampleSpec) -> SampledSignal:
    """The partial sum ``f_K`` on the grid of ``spec.phi``.

    Raises
    ------
    ResolutionError
        If ``π/Δ < 2^K · R`` with ``R`` the support radius of ``φ``, i.e.
        the fastest chirp in the series is not resolved.
    """
    grid = spec.phi.grid
    R = max(abs(x) for x in PHI_SUPPORT)
    need = 2.0 ** spec.K * R
    if grid.nyquist < need:
        raise ResolutionError(f"grid resolves frequencies up to {grid.nyquist:.4g}, need {need:.4g}")
    phi = spec.phi.values
    idx = np.nonzero(phi)[0]
    out = np.zeros(grid.N, dtype=np.complex128)
    if idx.size == 0:
        return SampledSignal(grid, out)
    # only the support carries work; N can be ~1e7
    sl = slice(idx[0], idx[-1] + 1)
    t = grid.points[sl]
    acc = np.zeros(t.size, dtype=np.complex128)
    for a in spec.a:
        b = spec.profile(a)
        acc += math.sqrt(2 * a) * np.exp(1j * (b * spec.u0 - t) ** 2 / (4 * a))
    out[sl] = acc * phi[sl]
    return SampledSignal(grid, out)


def counterexample_values(spec: CounterexampleSpec, f: SampledSignal, ns) -> np.ndarray:
    """``|L_{a_n} f(u₀)|`` for each ``n``, via the time-domain kernel."""
    vals = []
    for n in ns:
        a = 2.0 ** -int(n)
        v = l_a(a, spec.profile, f, [spec.u0], method="time", sum_method="direct")
        vals.append(abs(complex(v[0])))
    return np.asarray(vals)


def counterexample_report(spec: CounterexampleSpec, ns=range(6, 13), *,
                          threshold_factor: float = 0.5) -> ExperimentReport:
    """Build ``f_K``, evaluate ``|L_{a_n} f_K(u₀)|`` and the C^{1/2} seminorm.

    The flag ``lower_bound_holds`` compares each value against
    ``threshold_factor·|∫φ|``.
    """
    f = holder_counterexample(spec)
    grid = f.grid
    phi_int = abs(grid.spacing * complex(spec.phi.values.sum()))
    thr = threshold_factor * phi_int
    ns = [int(n) for n in ns]
    vals = counterexample_values(spec, f, ns)
    f_u0 = abs(complex(l_a(0.0, spec.profile, f, [spec.u0])[0]))
    semi = holder_seminorm(f, 0.5)
    rep = ExperimentReport("counterexample", ["n", "a_n", "abs_L_an_f_u0", "threshold", "passes"],
                           config={**spec.echo(), "ns": ns, "threshold_factor": threshold_factor})
    for n, v in zip(ns, vals):
        rep.add_row(n, 2.0 ** -n, float(v), thr, bool(v >= thr))
    rep.summary.update({"f_u0": f_u0, "holder_seminorm": semi, "phi_integral": phi_int,
                        "diagonal_term": phi_int / math.sqrt(2 * math.pi)})
    rep.flags["lower_bound_holds"] = bool(np.all(vals >= thr))
    rep.flags["f_vanishes_at_u0"] = f_u0 <= 1e-12
    rep.curves["abs_L_an_f_u0"] = (np.asarray(ns, dtype=float), vals)
    return rep
