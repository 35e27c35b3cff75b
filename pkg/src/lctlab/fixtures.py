"""Test signals used by the experiments and the CLI."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .signals import Grid, SampledSignal

__all__ = [
    "FIXTURES",
    "HOLDER_FIXTURES",
    "bump",
    "gaussian",
    "hermite4",
    "holder_fixture",
    "make_fixture",
    "smooth_bump",
]


def smooth_bump(t, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    """``exp(1 − 1/(1 − x²))`` on ``(lo, hi)`` mapped to ``x ∈ (−1, 1)``; peak value 1."""
    t = np.asarray(t, dtype=float)
    c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
    x = (t - c) / r
    out = np.zeros_like(x)
    m = np.abs(x) < 1
    out[m] = np.exp(1.0 - 1.0 / (1.0 - x[m] ** 2))
    return out


def gaussian(grid: Grid) -> SampledSignal:
    """``e^{−t²/2}``; its own Fourier transform."""
    return SampledSignal.from_function(grid, lambda t: np.exp(-0.5 * t * t))


def bump(grid: Grid, lo: float = -2.0, hi: float = 2.0) -> SampledSignal:
    """C^∞ bump supported on ``[lo, hi]``."""
    return SampledSignal(grid, smooth_bump(grid.points, lo, hi))


def hermite4(grid: Grid) -> SampledSignal:
    """``H_4(t) e^{−t²/2}`` with ``H_4 = 16t⁴ − 48t² + 12``; a Fourier eigenfunction."""
    t = grid.points
    return SampledSignal(grid, (16 * t ** 4 - 48 * t ** 2 + 12) * np.exp(-0.5 * t * t))


FIXTURES = {"gaussian": gaussian, "bump": bump, "hermite4": hermite4}


def make_fixture(name: str, grid: Grid) -> SampledSignal:
    try:
        return FIXTURES[name](grid)
    except KeyError:
        raise ParameterError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


# -- C^{1/2} functions supported in [0, 1] -----------------------------------

def _sqrt_arch(t):
    return np.sqrt(np.clip(t * (1 - t), 0.0, None)) * ((t > 0) & (t < 1))


def _sqrt_tent(t):
    return np.sqrt(np.clip(0.5 - np.abs(t - 0.5), 0.0, None)) * ((t > 0) & (t < 1))


def _cusp_bump(t):
    # √|t − 1/2| has its cusp in the interior; the bump makes it compactly supported
    return np.sqrt(np.abs(t - 0.5)) * smooth_bump(t, 0.0, 1.0)


HOLDER_FIXTURES = {"sqrt-arch": _sqrt_arch, "sqrt-tent": _sqrt_tent, "cusp-bump": _cusp_bump}


def holder_fixture(name: str, grid: Grid) -> SampledSignal:
    """A C^{1/2} function supported in ``[0, 1]``, sampled on ``grid``."""
    try:
        func = HOLDER_FIXTURES[name]
    except KeyError:
        raise ParameterError(f"unknown Hölder fixture {name!r}; choose from {sorted(HOLDER_FIXTURES)}") from None
    return SampledSignal.from_function(grid, func)
