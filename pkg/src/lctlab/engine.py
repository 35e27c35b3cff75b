"""Linear canonical transforms, the fractional Fourier transform and the
quadratic-phase operators ``G`` and ``L_a``.

The LCT with parameters ``(A, B, C, D)`` is

    L f(u) = D ∫ exp(i[A u²/2 − B u t + C t²/2]) f(t) dt.

Each operator has a fast path that returns samples on a *natural* output
grid (one FFT) and a direct path that evaluates arbitrary output points as
an exponential sum, using a chirp-z transform when the points are
uniformly spaced.  All quadrature is the rectangle rule on the periodic
grid, which equals the trapezoid rule for samples that vanish at the ends.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._sums import exp_sum_direct, exp_sum_uniform, is_uniform
from .errors import AliasingError, ParameterError
from .profiles import BProfile
from .signals import (
    AliasPolicy,
    Grid,
    SampledSignal,
    _check_boundary,
    _fft_forward,
    _fft_inverse,
    bandwidth,
    support_radius,
    SUPPORT_TOL,
)

__all__ = [
    "BRANCH_EPS",
    "LCTParams",
    "frft",
    "frft_params",
    "g_alpha",
    "g_alpha_natural",
    "g_alpha_spectrum",
    "g_alpha_time",
    "g_alpha_valid_mask",
    "l_a",
    "l_a_spectrum",
    "lct_chirp",
    "lct_direct",
    "lct_on_grid",
    "lct_output_grid",
    "lct_valid_mask",
]

#: Distance from an integer multiple of π below which ``frft`` uses the exact limit.
BRANCH_EPS = 1e-3

_SQRT_2PI = math.sqrt(2.0 * math.pi)
# below this many output points the direct sum beats the chirp-z setup cost
_CZT_MIN_POINTS = 32


@dataclass(frozen=True)
class LCTParams:
    """Parameters ``(A, B, C)`` and normalizer ``D`` of one LCT instance."""

    A: float
    B: float
    C: float
    D: complex = 1.0

    def __post_init__(self):
        for name in ("A", "B", "C"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ParameterError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        D = complex(self.D)
        if not cmath.isfinite(D):
            raise ParameterError("D must be finite")
        object.__setattr__(self, "D", D)
        if self.B == 0.0:
            raise ParameterError("B = 0 is not an integral transform")

    @staticmethod
    def default_d(B: float) -> complex:
        """Unitary normalizer ``√(|B|/2π)·e^{−iπ/4·sgn B}``."""
        return math.sqrt(abs(B) / (2 * math.pi)) * cmath.exp(-0.25j * math.pi * math.copysign(1.0, B))

    @classmethod
    def unitary(cls, A: float, B: float, C: float) -> "LCTParams":
        if B == 0:
            raise ParameterError("B = 0 is not an integral transform")
        return cls(A, B, C, cls.default_d(B))

    @property
    def is_unitary(self) -> bool:
        return math.isclose(abs(self.D), math.sqrt(abs(self.B) / (2 * math.pi)), rel_tol=1e-12)

    def as_tuple(self) -> tuple[float, float, float, complex]:
        return (self.A, self.B, self.C, self.D)


# ---------------------------------------------------------------------------
# helpers


def _as_points(u) -> np.ndarray:
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.ndim != 1 or not np.all(np.isfinite(u)):
        raise ParameterError("evaluation points must be a finite 1-D sequence")
    return u


def _exp_sum(values: np.ndarray, grid: Grid, freqs: np.ndarray, method: str,
             start: int = 0) -> np.ndarray:
    """``Σ_j values_j e^{i freqs_k t_{start+j}}`` on ``grid``."""
    if method not in ("auto", "direct", "czt"):
        raise ParameterError(f"unknown method {method!r}")
    uniform = freqs.size >= 2 and is_uniform(freqs)
    if method == "czt" and freqs.size >= 2 and not uniform:
        raise ParameterError("the chirp-z path needs uniformly spaced evaluation points")
    use_czt = uniform and (method == "czt" or (method == "auto" and freqs.size >= _CZT_MIN_POINTS))
    t0 = -grid.T + start * grid.spacing
    if use_czt:
        dw = (freqs[-1] - freqs[0]) / (freqs.size - 1)
        return exp_sum_uniform(values, t0, grid.spacing, freqs[0], dw, freqs.size)
    nodes = t0 + grid.spacing * np.arange(values.size)
    return exp_sum_direct(values, nodes, freqs)


def _nonzero_span(values: np.ndarray) -> slice:
    nz = np.nonzero(values)[0]
    return slice(0, 0) if nz.size == 0 else slice(int(nz[0]), int(nz[-1]) + 1)


def _support_ends(f: SampledSignal, tol: float = SUPPORT_TOL) -> tuple[float, float]:
    mag = np.abs(f.values)
    peak = mag.max()
    if peak == 0.0:
        return (0.0, 0.0)
    idx = np.nonzero(mag > tol * peak)[0]
    pts = f.grid.points
    return (float(pts[idx[0]]), float(pts[idx[-1]]))


# ---------------------------------------------------------------------------
# LCT


def lct_valid_mask(p: LCTParams, f: SampledSignal, u_points) -> np.ndarray:
    """Points where the integrand's instantaneous frequency stays below ``π/Δ``.

    The local frequency of ``e^{i(Ct²/2 − But)}`` is ``Ct − Bu``; being
    linear in ``t`` its maximum over the support sits at an endpoint.
    """
    u = _as_points(u_points)
    lo, hi = _support_ends(f)
    lim = f.grid.nyquist * (1 + 1e-12)
    worst = np.maximum(np.abs(p.C * lo - p.B * u), np.abs(p.C * hi - p.B * u))
    return worst <= lim


def lct_direct(p: LCTParams, f: SampledSignal, u_points, *, method: str = "auto",
               policy: AliasPolicy | None = None, check: bool = True) -> np.ndarray:
    """Evaluate the LCT of ``f`` at arbitrary points by quadrature.

    Parameters
    ----------
    p : LCTParams
    f : SampledSignal
    u_points : array_like
        Output points.
    method : {"auto", "direct", "czt"}
        ``"czt"`` requires uniformly spaced ``u_points``.
    policy : AliasPolicy, optional
        Boundary-mass thresholds for ``f``.
    check : bool
        Raise :class:`AliasingError` if any point fails :func:`lct_valid_mask`.

    Returns
    -------
    ndarray of complex
    """
    u = _as_points(u_points)
    _check_boundary(f, policy, "input")
    if check:
        bad = ~lct_valid_mask(p, f, u)
        if np.any(bad):
            raise AliasingError(
                f"aliasing risk: integrand frequency exceeds π/Δ at {int(bad.sum())} of {u.size} points"
            )
    sl = _nonzero_span(f.values)
    t = f.grid.points[sl]
    v = f.values[sl] * np.exp(0.5j * p.C * t * t)
    s = _exp_sum(v, f.grid, -p.B * u, method, start=sl.start)
    return p.D * f.grid.spacing * np.exp(0.5j * p.A * u * u) * s


def lct_output_grid(p: LCTParams, grid: Grid) -> Grid:
    """Natural output grid of :func:`lct_chirp`: the reciprocal grid scaled by ``1/|B|``."""
    return Grid(grid.nyquist / abs(p.B), grid.N)


def lct_chirp(p: LCTParams, f: SampledSignal, *, policy: AliasPolicy | None = None) -> SampledSignal:
    """Chirp–FFT–chirp evaluation of the LCT on its natural output grid.

    Raises
    ------
    AliasingError
        If ``|C|·R + W > π/Δ`` where ``R`` is the support radius and ``W``
        the bandwidth of ``f``: the pre-chirped signal would alias.
    """
    _check_boundary(f, policy, "input")
    grid = f.grid
    if p.C != 0.0 and f.peak > 0.0:
        need = abs(p.C) * support_radius(f) + bandwidth(f)
        if need > grid.nyquist:
            raise AliasingError(
                f"aliasing risk: chirped bandwidth {need:.4g} exceeds π/Δ = {grid.nyquist:.4g}"
            )
    t = grid.points
    g = SampledSignal(grid, f.values * np.exp(0.5j * p.C * t * t))
    # ĝ(Bu) on the natural grid: B·u_k is exactly the k-th reciprocal-grid frequency
    spec = _fft_forward(g) if p.B > 0 else _fft_inverse(g)
    out_grid = lct_output_grid(p, grid)
    u = out_grid.points
    vals = p.D * _SQRT_2PI * np.exp(0.5j * p.A * u * u) * spec.values
    return SampledSignal(out_grid, vals)


def lct_on_grid(p: LCTParams, f: SampledSignal, grid: Grid, *,
                policy: AliasPolicy | None = None) -> tuple[SampledSignal, np.ndarray]:
    """Direct-path LCT sampled on ``grid``.

    Points failing :func:`lct_valid_mask` are set to zero; the mask is
    returned alongside so callers can account for them.
    """
    u = grid.points
    mask = lct_valid_mask(p, f, u)
    vals = lct_direct(p, f, u, policy=policy, check=False)
    vals[~mask] = 0.0
    return SampledSignal(grid, vals), mask


# ---------------------------------------------------------------------------
# FRFT


def _reduce_angle(alpha: float) -> float:
    """Reduce to ``(−π, π]``."""
    a = math.remainder(float(alpha), 2.0 * math.pi)
    return math.pi if a <= -math.pi else a


def frft_params(alpha: float) -> LCTParams:
    """LCT parameters of the FRFT of order ``alpha`` (not at a multiple of π).

    The normalizer is the principal root ``√((1 − i cot α)/2π)`` evaluated
    at ``alpha`` reduced to ``(−π, π]``.
    """
    a = _reduce_angle(alpha)
    s = math.sin(a)
    if s == 0.0:
        raise ParameterError("FRFT parameters are singular at multiples of π")
    cot = math.cos(a) / s
    D = cmath.sqrt((1 - 1j * cot) / (2 * math.pi))
    return LCTParams(cot, 1.0 / s, cot, D)


def frft(alpha: float, f: SampledSignal, *, policy: AliasPolicy | None = None,
         eps_branch: float = BRANCH_EPS) -> SampledSignal:
    """Fractional Fourier transform of order ``alpha``.

    Within ``eps_branch`` of ``nπ`` the exact limit ``f((−1)^n u)`` is
    returned on the input grid; otherwise the chirp path is used and the
    result lives on the natural output grid of ``frft_params(alpha)``.
    """
    a = _reduce_angle(alpha)
    if abs(a) <= eps_branch:
        return SampledSignal(f.grid, f.values)
    if math.pi - abs(a) <= eps_branch:
        # t_j ↦ −t_j maps index j to N − j; the endpoint −T wraps to itself
        return SampledSignal(f.grid, np.roll(f.values[::-1], 1))
    return lct_chirp(frft_params(a), f, policy=policy)


# ---------------------------------------------------------------------------
# G and L_a


def _check_B(B: float) -> float:
    B = float(B)
    if B == 0.0 or not math.isfinite(B):
        raise ParameterError("B must be finite and nonzero")
    return B


def g_alpha_valid_mask(A: float, B: float, spectrum: SampledSignal, u_points, *,
                       content: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """Points where the spectral integrand stays below the Nyquist limit ``π/Δξ``.

    The local frequency of ``ĝ(ξ) e^{i(Aξ² + Buξ)}`` is ``2Aξ + Bu − t``
    where ``t`` ranges over the time-domain support of ``g``, passed as
    ``content``.  The extremes sit at the corners of the two intervals.
    """
    u = _as_points(u_points)
    lo, hi = _support_ends(spectrum)
    lim = spectrum.grid.nyquist * (1 + 1e-12)
    worst = np.zeros_like(u)
    for xi in (lo, hi):
        for t in content:
            worst = np.maximum(worst, np.abs(2 * A * xi + B * u - t))
    return worst <= lim


def g_alpha_spectrum(A: float, B: float, D: complex, spectrum: SampledSignal, u_points, *,
                     method: str = "auto", check: bool = True,
                     content: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """``D ∫ ĝ(ξ) e^{i(Aξ² + Buξ)} dξ`` for a given spectrum ``ĝ``.

    ``content`` is the interval holding the time-domain support of ``g``;
    it only enters the aliasing check (see :func:`g_alpha_valid_mask`).
    """
    B = _check_B(B)
    u = _as_points(u_points)
    if check:
        bad = ~g_alpha_valid_mask(A, B, spectrum, u, content=content)
        if np.any(bad):
            raise AliasingError(
                f"aliasing risk: spectral phase frequency exceeds limit at {int(bad.sum())} points"
            )
    xi = spectrum.grid.points
    h = spectrum.values * np.exp(1j * A * xi * xi)
    return D * spectrum.grid.spacing * _exp_sum(h, spectrum.grid, B * u, method)


def g_alpha(A: float, B: float, D: complex, f: SampledSignal, u_points, *,
            method: str = "auto", policy: AliasPolicy | None = None,
            check: bool = True) -> np.ndarray:
    """Frequency-side quadratic-phase operator ``D ∫ f̂(ξ) e^{i(Aξ² + Buξ)} dξ``.

    ``f̂`` is the unitary Fourier transform of ``f``.  With ``D = 1`` the
    operator scales the L² norm by ``√(2π/|B|)``.
    """
    _check_boundary(f, policy, "input")
    return g_alpha_spectrum(A, B, D, _fft_forward(f), u_points, method=method, check=check,
                            content=_support_ends(f))


def g_alpha_natural(A: float, B: float, D: complex, f: SampledSignal, *,
                    policy: AliasPolicy | None = None) -> SampledSignal:
    """:func:`g_alpha` on its natural grid ``u_j = t_j/|B|`` via one inverse FFT."""
    B = _check_B(B)
    _check_boundary(f, policy, "input")
    spec = _fft_forward(f)
    xi = spec.grid.points
    need = 2 * abs(A) * support_radius(spec) + support_radius(f)
    if need > spec.grid.nyquist:
        raise AliasingError(
            f"aliasing risk: chirped spectrum needs {need:.4g} > {spec.grid.nyquist:.4g}"
        )
    h = SampledSignal(spec.grid, spec.values * np.exp(1j * A * xi * xi))
    back = _fft_inverse(h) if B > 0 else _fft_forward(h)
    return SampledSignal(Grid(f.grid.T / abs(B), f.grid.N), D * _SQRT_2PI * back.values)


def g_alpha_time(A: float, B: float, D: complex, f: SampledSignal, u_points, *,
                 method: str = "auto", policy: AliasPolicy | None = None,
                 check: bool = True) -> np.ndarray:
    """Time-domain form of :func:`g_alpha`, valid for ``A ≠ 0``:

        G f(u) = D √(i/(2A)) ∫ f(t) e^{−i(Bu − t)²/(4A)} dt.
    """
    B = _check_B(B)
    A = float(A)
    if A == 0.0:
        raise ParameterError("the time-domain form needs A != 0")
    u = _as_points(u_points)
    _check_boundary(f, policy, "input")
    if check:
        lo, hi = _support_ends(f)
        worst = np.maximum(np.abs(lo - B * u), np.abs(hi - B * u)) / (2 * abs(A))
        bad = worst > f.grid.nyquist * (1 + 1e-12)
        if np.any(bad):
            raise AliasingError(
                f"aliasing risk: kernel chirp under-resolved at {int(bad.sum())} points"
            )
    sl = _nonzero_span(f.values)
    t = f.grid.points[sl]
    v = f.values[sl] * np.exp(-1j * t * t / (4 * A))
    s = _exp_sum(v, f.grid, B * u / (2 * A), method, start=sl.start)
    pref = D * cmath.sqrt(1j / (2 * A)) * f.grid.spacing
    return pref * np.exp(-1j * (B * u) ** 2 / (4 * A)) * s


def _profile_b(a: float, profile: BProfile) -> float:
    a = float(a)
    if a != 0.0 and not profile.contains(a):
        lo, hi = profile.interval
        raise ParameterError(f"a = {a} outside the profile interval [{lo}, {hi}]")
    return profile(a)


def l_a(a: float, profile: BProfile, f: SampledSignal, u_points, *,
        method: str = "spectral", sum_method: str = "auto",
        policy: AliasPolicy | None = None, check: bool = True) -> np.ndarray:
    """Limit operator ``L_a f(u) = (2π)^{-1/2} ∫ e^{i(b(a)uv + av²)} f̂(v) dv``.

    Parameters
    ----------
    method : {"spectral", "time"}
        Chirp the spectrum, or use the equivalent time-domain kernel
        (requires ``a != 0``).
    sum_method : {"auto", "direct", "czt"}
        How the exponential sum is evaluated.

    At ``a = 0`` the result is ``f(b(0)·u)``, linearly interpolated on the
    grid (exact at grid points when ``b(0) = 1``).
    """
    b = _profile_b(a, profile)
    u = _as_points(u_points)
    if a == 0.0:
        _check_boundary(f, policy, "input")
        x = b * u
        t = f.grid.points
        v = f.values
        re = np.interp(x, t, v.real, left=0.0, right=0.0)
        im = np.interp(x, t, v.imag, left=0.0, right=0.0)
        return re + 1j * im
    D = 1.0 / _SQRT_2PI
    if method == "spectral":
        return g_alpha(a, b, D, f, u, method=sum_method, policy=policy, check=check)
    if method == "time":
        return g_alpha_time(a, b, D, f, u, method=sum_method, policy=policy, check=check)
    raise ParameterError(f"unknown method {method!r}")


def l_a_spectrum(a: float, profile: BProfile, spectrum: SampledSignal, u_points, *,
                 sum_method: str = "auto", check: bool = True,
                 content: tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """:func:`l_a` for a function given by its spectrum samples (``a != 0``)."""
    b = _profile_b(a, profile)
    return g_alpha_spectrum(a, b, 1.0 / _SQRT_2PI, spectrum, u_points,
                            method=sum_method, check=check, content=content)
