"""Wave-packet probes of the Sobolev threshold for a.e. convergence.

The packet is ``Φ_N(y) = NΦ(Ny)`` with ``Φ(x) = exp(1 − 1/(1 − x²/4))`` on
``|x| < 2`` (so ``Φ(0) = 1`` and ``Φ(±1) > 1/2``), modulated to
frequency ``−κ`` with ``κ = c·N²``.  Under ``L_a`` the modulated packet
travels to ``u = 2(a − a₀)κ/b(a)`` while barely dispersing, so choosing
``a = a(u)`` by that relation keeps ``|L_a g(u)|`` of size ``N`` on a fixed
witness interval, whereas ``‖g‖_{H^s}`` grows like ``N^{2s+1/2}``.

For ``a₀ ≠ 0`` the packet's spectrum also carries ``e^{−ia₀v²}``, which
leaves every norm unchanged and reduces the quadratic phase to
``(a − a₀)v²``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ..engine import _support_ends, g_alpha_spectrum
from ..errors import ParameterError, ResolutionError
from ..profiles import BProfile
from ..signals import AliasPolicy, DEFAULT_POLICY, Grid, SampledSignal, _fft_forward, boundary_mass, norm
from .report import ExperimentReport, fit_power_law

__all__ = ["packet", "packet_shape", "select_a", "wavepacket_probe"]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def packet_shape(x) -> np.ndarray:
    """``Φ(x) = exp(1 − 1/(1 − x²/4))`` on ``|x| < 2``, zero elsewhere."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = np.abs(x) < 2
    out[m] = np.exp(1.0 - 1.0 / (1.0 - 0.25 * x[m] ** 2))
    return out


def packet(N_scale: float, samples: int = 8192, half_width: float = 64.0) -> SampledSignal:
    """``Φ_N`` sampled on ``[−half_width/N, half_width/N)``."""
    grid = Grid(half_width / N_scale, samples)
    return SampledSignal(grid, N_scale * packet_shape(N_scale * grid.points))


def select_a(u: float, kappa: float, profile: BProfile) -> float:
    """Solve ``2(a − a₀)κ/b(a) = u`` for ``a`` in the profile interval."""
    a0, a1 = profile.interval

    def h(a):
        return 2 * (a - a0) * kappa / profile(a) - u

    if h(a0) * h(a1) > 0:
        raise ParameterError(f"u = {u} is not reached by any a in [{a0}, {a1}]")
    return brentq(h, a0, a1, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)


def wavepacket_probe(N_ladder, s: float, profile: BProfile, *, c: float = 8.0,
                     witness=(0.5, 1.0), n_witness: int = 33, samples: int = 8192,
                     policy: AliasPolicy | None = None) -> ExperimentReport:
    """Scaling of ``‖g_N‖_{H^s}`` and of the witness lower bound across ``N_ladder``.

    Columns per ``N``: ``‖Φ_N‖_{L²}``, ``‖g_N‖_{H^s}`` of the modulated
    packet, the minimum of ``|Φ_N|`` on ``[−1/N, 1/N]`` and the minimum
    over the witness points of ``|L_{a(u)} g_N(u)|``.

    Raises
    ------
    ResolutionError
        If the packet spectrum is not negligible at the edge of its grid.
    """
    policy = DEFAULT_POLICY if policy is None else policy
    ladder = [float(n) for n in N_ladder]
    if len(ladder) < 2 or any(n <= 0 for n in ladder):
        raise ParameterError("N_ladder needs at least two positive scales")
    if s < 0:
        raise ParameterError("s must be >= 0")
    u_w = np.linspace(witness[0], witness[1], n_witness)
    rep = ExperimentReport(
        "wavepacket",
        ["N", "kappa", "phi_l2", "packet_hs", "center_min", "witness_min", "witness_a_max"],
        config={"N_ladder": ladder, "s": s, "profile": profile.name,
                "interval": list(profile.interval), "c": c, "witness": list(witness),
                "n_witness": n_witness, "samples": samples},
        notes=["modulation frequency fixed at kappa = c N^2 so the witness interval is N-independent"],
    )
    l2s, hss, wmins = [], [], []
    center_ok = witness_ok = True
    for N in ladder:
        phi = packet(N, samples)
        spec = _fft_forward(phi)
        if boundary_mass(spec) > policy.error:
            raise ResolutionError(f"packet spectrum not resolved at N = {N}")
        kappa = c * N * N
        xi = spec.grid.points
        # modulation by e^{-iκy} shifts the spectrum: ĝ(v) = Φ̂_N(v + κ)
        hs = math.sqrt(spec.grid.spacing * float(np.sum((1 + (xi - kappa) ** 2) ** s * np.abs(spec.values) ** 2)))
        t = phi.grid.points
        inner = np.abs(t) <= 1.0 / N
        center = float(np.min(np.abs(phi.values[inner])))
        content = _support_ends(phi)
        vals, a_sel = [], []
        for u in u_w:
            a = select_a(u, kappa, profile)
            A = a - profile.a0
            # L_a g(u) = phase · (2π)^{-1/2} ∫ Φ̂_N(ξ) e^{i(Aξ² + (b u − 2Aκ)ξ)} dξ
            shift = profile(a) * u - 2 * A * kappa
            v = g_alpha_spectrum(A, 1.0, _INV_SQRT_2PI, spec, [shift], method="direct", content=content)
            vals.append(abs(complex(v[0])))
            a_sel.append(a)
        wmin = float(min(vals))
        l2 = norm(phi)
        rep.add_row(N, kappa, l2, hs, center, wmin, float(max(a_sel)))
        l2s.append(l2)
        hss.append(hs)
        wmins.append(wmin)
        center_ok &= center > N / 2
        witness_ok &= wmin >= 0.9 * N / 4
    rep.fits["phi_l2"] = fit_power_law(ladder, l2s)
    rep.fits["packet_hs"] = fit_power_law(ladder, hss)
    rep.fits["witness_min"] = fit_power_law(ladder, wmins)
    rep.flags["center_above_half"] = bool(center_ok)
    rep.flags["witness_bound"] = bool(witness_ok)
    rep.flags["hs_exponent_bound"] = bool(rep.fits["packet_hs"].exponent <= 2 * s + 0.5 + 0.1)
    rep.curves["packet_hs"] = (np.asarray(ladder), np.asarray(hss))
    rep.curves["witness_min"] = (np.asarray(ladder), np.asarray(wmins))
    return rep
