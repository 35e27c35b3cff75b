"""Growth of ``‖L_* f₀‖_{L^p} / ‖f₀‖_{H^s}`` for spectrally modulated indicators.

``f̂₀(ξ) = e^{iNξ}·χ_{[−ρ, ρ]}(ξ)`` with ``ρ = (a₀ + δ)^{−1/2}``.  The
modulation moves ``f₀`` to ``t = −N`` without changing ``|f̂₀|``, so
``‖f₀‖_{H^s}`` does not depend on ``N``.  On
``F = [−N/b(a₀), −N/b(a₀+δ)]`` the selection ``ã(u)`` with
``b(ã(u))·u + N = 0`` cancels the linear phase, leaving
``|L_ã f₀(u)| = (2π)^{−1/2}|∫_{−ρ}^{ρ} e^{iãξ²} dξ|``, which is bounded
below on a set whose length grows like ``N``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ..engine import l_a_spectrum
from ..errors import ParameterError
from ..profiles import BProfile
from ..signals import Grid, SampledSignal, sobolev_norm_spectrum
from .maximal import LP_NOTE, lp_norm
from .report import ExperimentReport, fit_power_law

__all__ = ["global_unboundedness_probe", "modulated_indicator", "witness_bound"]

#: ``2 cos 1``: lower bound of ``|∫_{−ρ}^{ρ} e^{iaξ²} dξ|`` when ``aρ² <= 1`` and ``ρ >= 1``.
WITNESS_CONST = 2 * math.cos(1.0)


def witness_bound() -> float:
    return WITNESS_CONST


def modulated_indicator(N_scale: float, rho: float, samples: int = 4096) -> SampledSignal:
    """Spectrum samples of ``e^{iNξ}χ_{[−ρ,ρ]}`` on a grid of half-width ``2ρ``.

    ``±ρ`` fall on grid points and carry weight 1/2, so rectangle sums over
    the grid are trapezoid sums for the truncated integral.
    """
    grid = Grid(2 * rho, samples)
    xi = grid.points
    w = (np.abs(xi) < rho).astype(float)
    w[np.isclose(np.abs(xi), rho, rtol=0, atol=1e-9 * rho)] = 0.5
    return SampledSignal(grid, w * np.exp(1j * N_scale * xi))


def _invert_b(profile: BProfile, target: float) -> float:
    a0, a1 = profile.interval
    return brentq(lambda a: profile(a) - target, a0, a1, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def global_unboundedness_probe(N_ladder, s: float, p: float, profile: BProfile, *,
                               du: float = 0.05, pad: float = 40.0, n_a: int = 33,
                               n_witness: int = 64, samples: int = 4096) -> ExperimentReport:
    """Ratio ``‖L_* f₀‖_{L^p(u-grid)} / ‖f₀‖_{H^s}`` over a ladder of modulations ``N``.

    ``L_*`` is the maximum over ``n_a`` equally spaced ``a`` in
    ``(a₀, a₀+δ]``; the u-grid covers ``F`` plus ``pad`` on each side.
    Witness values ``|L_{ã(u)} f₀(u)|`` are computed at ``n_witness``
    points of ``F`` with ``ã(u)`` from inverting ``b``.

    Raises
    ------
    ParameterError
        If ``b`` is constant on the interval, is not monotone there, or
        ``s <= 0`` / ``p`` is not finite and ``>= 1``.
    """
    if profile.is_constant:
        raise ParameterError("inapplicable: b is constant on the interval, its range is a null set")
    a0, a1 = profile.interval
    b0, b1 = profile(a0), profile(a1)
    aa = np.linspace(a0, a1, 257)
    if not np.all(np.diff(profile(aa)) > 0) and not np.all(np.diff(profile(aa)) < 0):
        raise ParameterError("the witness selection needs b strictly monotone on the interval")
    if a1 <= 0:
        raise ParameterError("need a0 + delta > 0")
    if not s > 0 or not (1 <= p < math.inf):
        raise ParameterError("need s > 0 and 1 <= p < inf")
    ladder = [float(n) for n in N_ladder]
    if len(ladder) < 2:
        raise ParameterError("N_ladder needs at least two entries")
    rho = 1.0 / math.sqrt(a1)
    a_grid = a0 + (a1 - a0) * np.arange(1, n_a + 1) / n_a

    rep = ExperimentReport(
        "global-probe",
        ["N", "F_lo", "F_hi", "lp_norm", "hs_norm", "ratio", "witness_min"],
        config={"N_ladder": ladder, "s": s, "p": p, "profile": profile.name,
                "interval": [a0, a1], "du": du, "pad": pad, "n_a": n_a,
                "n_witness": n_witness, "samples": samples, "rho": rho},
        notes=[LP_NOTE, "F is the explicit interval [-N/b(a0), -N/b(a0+delta)] (or its mirror)"],
    )
    ratios, hs_all, wmins = [], [], []
    for N in ladder:
        spec = modulated_indicator(N, rho, samples)
        content = (-N, -N)
        F = sorted((-N / b0, -N / b1))
        u = np.arange(F[0] - pad, F[1] + pad + 0.5 * du, du)
        Ls = np.zeros(u.size)
        for a in a_grid:
            Ls = np.maximum(Ls, np.abs(l_a_spectrum(a, profile, spec, u, sum_method="czt",
                                                    content=content)))
        lp = lp_norm(Ls, u, p)
        hs = sobolev_norm_spectrum(spec, s)
        uw = np.linspace(F[0], F[1], n_witness + 2)[1:-1]
        wv = []
        for ui in uw:
            at = _invert_b(profile, -N / ui)
            wv.append(abs(complex(l_a_spectrum(at, profile, spec, [ui], sum_method="direct",
                                               content=content)[0])))
        wmin = float(min(wv))
        ratios.append(lp / hs)
        hs_all.append(hs)
        wmins.append(wmin)
        rep.add_row(N, F[0], F[1], lp, hs, lp / hs, wmin)
    fit = fit_power_law(ladder, ratios)
    rep.fits["ratio"] = fit
    hs_arr = np.asarray(hs_all)
    rep.summary["hs_variation"] = float(np.ptp(hs_arr) / hs_arr.mean())
    rep.summary["witness_min"] = float(min(wmins))
    rep.summary["witness_const"] = WITNESS_CONST
    rep.flags["ratio_increasing"] = bool(np.all(np.diff(ratios) > 0))
    rep.flags["witness_above_bound"] = bool(min(wmins) >= WITNESS_CONST - 0.05)
    rep.flags["exponent_near_inverse_p"] = bool(abs(fit.exponent - 1 / p) <= 0.1)
    rep.curves["ratio"] = (np.asarray(ladder), np.asarray(ratios))
    return rep
