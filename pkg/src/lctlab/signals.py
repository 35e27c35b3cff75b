"""Uniform grids, sampled complex signals and the continuous Fourier transform.

The Fourier convention is the unitary one,

    f̂(ξ) = (2π)^{-1/2} ∫ e^{-iξt} f(t) dt,

approximated on a symmetric grid ``t_j = -T + jΔ`` by a scaled FFT.  With the
reciprocal grid ``ξ_k = -π/Δ + k·2π/(NΔ)`` the phase corrections for the
grid offsets reduce to exact alternating signs because ``N`` is a power of
two, so a forward/inverse round trip is exact up to FFT rounding.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AliasingError, AliasingWarning, ParameterError

__all__ = [
    "AliasPolicy",
    "Grid",
    "NormSpec",
    "SampledSignal",
    "bandwidth",
    "boundary_mass",
    "fourier",
    "holder_seminorm",
    "inverse_fourier",
    "load_signal",
    "make_grid",
    "norm",
    "sobolev_norm_spectrum",
    "support_radius",
]

#: Relative magnitude below which a sample counts as "outside the support".
SUPPORT_TOL = 1e-8


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class Grid:
    """Symmetric uniform grid ``t_j = -T + jΔ``, ``j = 0..N-1``, ``Δ = 2T/N``."""

    T: float
    N: int

    def __post_init__(self):
        T = float(self.T)
        if not (math.isfinite(T) and T > 0):
            raise ParameterError(f"grid half-width must be positive, got {self.T!r}")
        if isinstance(self.N, bool) or int(self.N) != self.N or not _is_power_of_two(int(self.N)):
            raise ParameterError(f"grid size must be a power of two, got {self.N!r}")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "N", int(self.N))

    @property
    def spacing(self) -> float:
        return 2.0 * self.T / self.N

    @property
    def points(self) -> np.ndarray:
        return -self.T + self.spacing * np.arange(self.N)

    @property
    def nyquist(self) -> float:
        """Largest resolvable angular frequency, ``π/Δ``."""
        return math.pi / self.spacing

    def reciprocal(self) -> "Grid":
        """Grid on which the FFT places the spectrum (half-width ``π/Δ``)."""
        return Grid(math.pi * self.N / (2.0 * self.T), self.N)

    def scaled(self, factor: float) -> "Grid":
        return Grid(self.T * abs(factor), self.N)

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self.N == other.N and math.isclose(self.T, other.T, rel_tol=1e-12)

    def __hash__(self):
        return hash(self.N)

    def to_dict(self) -> dict:
        return {"T": self.T, "N": self.N}


def make_grid(T: float, N: int) -> Grid:
    """Build a grid, enforcing ``T > 0`` and ``N >= 8`` a power of two."""
    if isinstance(N, bool) or int(N) != N or N < 8:
        raise ParameterError(f"grid size must be an integer >= 8, got {N!r}")
    return Grid(T, int(N))


class SampledSignal:
    """Immutable complex samples of a function on a :class:`Grid`."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values):
        arr = np.array(values, dtype=np.complex128, copy=True).reshape(-1)
        if arr.shape[0] != grid.N:
            raise ParameterError(f"expected {grid.N} samples, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("signal samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SampledSignal is immutable")

    def __repr__(self):
        return f"SampledSignal(grid={self.grid!r}, max|f|={self.peak:.3g})"

    @classmethod
    def from_function(cls, grid: Grid, func) -> "SampledSignal":
        return cls(grid, func(grid.points))

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.values))) if self.grid.N else 0.0

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.grid, values)

    def __mul__(self, c):
        return self.with_values(self.values * c)

    __rmul__ = __mul__

    def __add__(self, other: "SampledSignal") -> "SampledSignal":
        self._check_same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "SampledSignal") -> "SampledSignal":
        self._check_same_grid(other)
        return self.with_values(self.values - other.values)

    def _check_same_grid(self, other):
        if self.grid != other.grid:
            raise ParameterError("signals live on different grids")

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "values": [[float(z.real), float(z.imag)] for z in self.values],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SampledSignal":
        try:
            grid = Grid(data["grid"]["T"], data["grid"]["N"])
            vals = np.asarray(data["values"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed signal document: {exc}") from exc
        if vals.ndim != 2 or vals.shape[1] != 2:
            raise ParameterError("signal values must be [[re, im], ...]")
        return cls(grid, vals[:, 0] + 1j * vals[:, 1])

    def to_json(self, path=None) -> str:
        text = json.dumps(self.to_dict(), separators=(",", ":"))
        if path is not None:
            Path(path).write_text(text)
        return text

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "re", "im"])
        for t, z in zip(self.points, self.values):
            writer.writerow([format(t, ".17g"), format(z.real, ".17g"), format(z.imag, ".17g")])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


def load_signal(path) -> SampledSignal:
    """Read a signal from the JSON file format."""
    with open(path) as fh:
        return SampledSignal.from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# aliasing diagnostics


@dataclass(frozen=True)
class AliasPolicy:
    """Boundary-mass thresholds: warn above ``warn``, raise above ``error``."""

    warn: float = 1e-8
    error: float = 1e-4

    def __post_init__(self):
        if not (0 <= self.warn <= self.error):
            raise ParameterError("need 0 <= warn <= error")


DEFAULT_POLICY = AliasPolicy()


def boundary_mass(f: SampledSignal) -> float:
    """Largest endpoint magnitude relative to the peak magnitude."""
    peak = f.peak
    if peak == 0.0:
        return 0.0
    v = f.values
    return max(abs(v[0]), abs(v[-1])) / peak


def _check_boundary(f: SampledSignal, policy: AliasPolicy | None, what: str) -> None:
    policy = DEFAULT_POLICY if policy is None else policy
    mass = boundary_mass(f)
    if mass > policy.error:
        raise AliasingError(f"aliasing risk: {what} boundary mass {mass:.3g} > {policy.error:.3g}")
    if mass > policy.warn:
        warnings.warn(
            f"aliasing risk: {what} boundary mass {mass:.3g} > {policy.warn:.3g}",
            AliasingWarning,
            stacklevel=3,
        )


def support_radius(f: SampledSignal, tol: float = SUPPORT_TOL) -> float:
    """Largest ``|t|`` at which ``|f(t)|`` exceeds ``tol`` times the peak."""
    mag = np.abs(f.values)
    peak = mag.max()
    if peak == 0.0:
        return 0.0
    idx = np.nonzero(mag > tol * peak)[0]
    pts = f.grid.points[[idx[0], idx[-1]]]
    return float(np.max(np.abs(pts)))


def bandwidth(f: SampledSignal, tol: float = SUPPORT_TOL) -> float:
    """Support radius of the spectrum of ``f``."""
    return support_radius(_fft_forward(f), tol)


# ---------------------------------------------------------------------------
# Fourier transform


def _signs(n: int) -> np.ndarray:
    s = np.ones(n)
    s[1::2] = -1.0
    return s


def _fft_forward(f: SampledSignal) -> SampledSignal:
    N = f.grid.N
    sg = _signs(N)
    # e^{-i ξ_k t_j} = (-1)^k (-1)^j e^{-2πijk/N}; the global factor e^{-iπN/2} is 1 for N % 4 == 0
    vals = sg * np.fft.fft(f.values * sg) * (f.grid.spacing / math.sqrt(2.0 * math.pi))
    return SampledSignal(f.grid.reciprocal(), vals)


def _fft_inverse(g: SampledSignal) -> SampledSignal:
    N = g.grid.N
    sg = _signs(N)
    vals = sg * np.fft.ifft(g.values * sg) * (N * g.grid.spacing / math.sqrt(2.0 * math.pi))
    return SampledSignal(g.grid.reciprocal(), vals)


def fourier(f: SampledSignal, policy: AliasPolicy | None = None) -> SampledSignal:
    """Unitary continuous Fourier transform sampled on the reciprocal grid."""
    _check_boundary(f, policy, "time-domain")
    return _fft_forward(f)


def inverse_fourier(g: SampledSignal, policy: AliasPolicy | None = None) -> SampledSignal:
    """Inverse of :func:`fourier` (kernel ``e^{+iξt}``)."""
    _check_boundary(g, policy, "frequency-domain")
    return _fft_inverse(g)


# ---------------------------------------------------------------------------
# norms


_NORM_KINDS = ("L2", "WeightedL2", "Sobolev", "HolderSeminorm")


@dataclass(frozen=True)
class NormSpec:
    """Which norm to compute; ``param`` is ``r`` (weight), ``s`` (Sobolev/Hölder)."""

    kind: str = "L2"
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in _NORM_KINDS:
            raise ParameterError(f"unknown norm kind {self.kind!r}")
        p = float(self.param)
        if self.kind in ("WeightedL2", "Sobolev") and p < 0:
            raise ParameterError(f"{self.kind} parameter must be >= 0")
        if self.kind == "HolderSeminorm" and not (0 < p <= 1):
            raise ParameterError("Hölder order must lie in (0, 1]")
        object.__setattr__(self, "param", p)

    @classmethod
    def l2(cls):
        return cls("L2")

    @classmethod
    def weighted(cls, r: float):
        return cls("WeightedL2", r)

    @classmethod
    def sobolev(cls, s: float):
        return cls("Sobolev", s)

    @classmethod
    def holder(cls, s: float):
        return cls("HolderSeminorm", s)


def sobolev_norm_spectrum(spectrum: SampledSignal, s: float) -> float:
    """``H^s`` norm from spectrum samples: ``(∫ (1+ξ²)^s |f̂|² dξ)^{1/2}``."""
    xi = spectrum.grid.points
    w = (1.0 + xi * xi) ** s
    return math.sqrt(spectrum.grid.spacing * float(np.sum(w * np.abs(spectrum.values) ** 2)))


def holder_seminorm(f: SampledSignal, s: float) -> float:
    """Lower estimate of the order-``s`` Hölder seminorm.

    Only pairs at separations ``Δ, 2Δ, 4Δ, ...`` are inspected, so the
    cost is ``O(N log N)`` and the result never exceeds the exact seminorm.
    """
    v = f.values
    N = f.grid.N
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        return 0.0
    lo, hi = int(nz[0]), int(nz[-1])
    best = 0.0
    shift = 1
    while shift < N:
        # pairs with both ends outside [lo, hi] contribute nothing
        seg = v[max(0, lo - shift): min(N, hi + shift + 1)]
        if seg.size > shift:
            d = float(np.max(np.abs(seg[shift:] - seg[:-shift])))
            best = max(best, d / (shift * f.grid.spacing) ** s)
        shift *= 2
    return best


def norm(f: SampledSignal, spec: NormSpec | None = None) -> float:
    """Truncated-domain approximation of the requested norm of ``f``."""
    spec = NormSpec() if spec is None else spec
    d = f.grid.spacing
    mag2 = np.abs(f.values) ** 2
    if spec.kind == "L2":
        return math.sqrt(d * float(np.sum(mag2)))
    if spec.kind == "WeightedL2":
        t = f.grid.points
        return math.sqrt(d * float(np.sum(mag2 * (1.0 + t * t) ** spec.param)))
    if spec.kind == "Sobolev":
        return sobolev_norm_spectrum(_fft_forward(f), spec.param)
    return holder_seminorm(f, spec.param)
