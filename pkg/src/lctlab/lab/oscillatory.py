"""Truncated oscillatory integrals ``∫_{−N}^{N} (1+ξ²)^{−1/4} e^{i(aξ²+bξ)} dξ``."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError, ResolutionError
from .report import ExperimentReport

__all__ = ["MIN_SAMPLES_PER_PERIOD", "LATTICE", "oscillatory_integral", "oscillatory_integral_check",
           "oscillatory_lattice"]

MIN_SAMPLES_PER_PERIOD = 16
LATTICE = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0)
# caps the (chunk) temporary arrays at a few MB
_CHUNK = 1 << 20


def oscillatory_integral(a: float, b: float, N_limit: float, *,
                         samples_per_period: int = MIN_SAMPLES_PER_PERIOD) -> complex:
    """Trapezoid value of the integral with at least ``samples_per_period``
    samples per period of the fastest local oscillation ``|2aN| + |b|``.

    Raises
    ------
    ResolutionError
        If ``samples_per_period`` is below :data:`MIN_SAMPLES_PER_PERIOD`.
    """
    if samples_per_period < MIN_SAMPLES_PER_PERIOD:
        raise ResolutionError(
            f"need at least {MIN_SAMPLES_PER_PERIOD} samples per period, got {samples_per_period}"
        )
    fastest = 2 * abs(a) * N_limit + abs(b)
    # a slowly varying integrand still needs a few samples per unit length
    h = min(2 * math.pi / fastest / samples_per_period if fastest > 0 else math.inf, 0.05)
    n = int(math.ceil(2 * N_limit / h))
    h = 2 * N_limit / n
    total = 0j
    for s in range(0, n + 1, _CHUNK):
        j = np.arange(s, min(n + 1, s + _CHUNK))
        x = -N_limit + h * j
        w = np.ones(j.size)
        w[j == 0] = 0.5
        w[j == n] = 0.5
        total += complex(np.sum(w * (1 + x * x) ** -0.25 * np.exp(1j * (a * x * x + b * x))))
    return total * h


def _validate(a: float, b: float, N_limit: float) -> None:
    if a == 0.0 and b == 0.0:
        raise ParameterError("(a, b) = (0, 0): the bound degenerates")
    if b != 0.0 and not N_limit > max(1 / math.sqrt(abs(b)), 1 / abs(b)):
        raise ParameterError("N_limit must exceed max(|b|^-1/2, |b|^-1)")
    if not N_limit > 0:
        raise ParameterError("N_limit must be positive")


def oscillatory_integral_check(a: float, b: float, N_limit: float, *,
                               samples_per_period: int = MIN_SAMPLES_PER_PERIOD) -> ExperimentReport:
    """Value of the truncated integral and the ratio ``|I|·(a²+b²)^{1/4}``."""
    _validate(a, b, N_limit)
    I = oscillatory_integral(a, b, N_limit, samples_per_period=samples_per_period)
    ratio = abs(I) * (a * a + b * b) ** 0.25
    rep = ExperimentReport("lemma-integral", ["a", "b", "N_limit", "re", "im", "abs", "ratio"],
                           config={"a": a, "b": b, "N_limit": N_limit,
                                   "samples_per_period": samples_per_period})
    rep.add_row(a, b, N_limit, I.real, I.imag, abs(I), ratio)
    rep.summary["ratio"] = ratio
    return rep


def oscillatory_lattice(values=LATTICE, N_limits=(100.0, 200.0), *,
                        samples_per_period: int = MIN_SAMPLES_PER_PERIOD) -> ExperimentReport:
    """Normalized ratios over ``{(a, b) : |a|, |b| ∈ values} \\ {(0, 0)}``.

    ``|I|`` is invariant under ``a → −a`` (complex conjugation) and
    ``b → −b`` (``ξ → −ξ``), so only the non-negative quadrant is computed.
    The flag ``stable`` requires the lattice maximum to change by less than
    a factor two between consecutive ``N_limits``.
    """
    vals = sorted({abs(float(v)) for v in values})
    N_limits = [float(n) for n in N_limits]
    rep = ExperimentReport("lemma-integral", ["a", "b", "N_limit", "re", "im", "abs", "ratio"],
                           config={"values": vals, "N_limits": N_limits,
                                   "samples_per_period": samples_per_period,
                                   "symmetry": "|I| depends only on |a| and |b|"})
    maxima = []
    for N in N_limits:
        best = 0.0
        for a in vals:
            for b in vals:
                if a == 0.0 and b == 0.0:
                    continue
                _validate(a, b, N)
                I = oscillatory_integral(a, b, N, samples_per_period=samples_per_period)
                ratio = abs(I) * (a * a + b * b) ** 0.25
                best = max(best, ratio)
                rep.add_row(a, b, N, I.real, I.imag, abs(I), ratio)
        maxima.append(best)
    rep.summary["max_ratio"] = dict(zip([format(n, "g") for n in N_limits], maxima))
    rep.flags["finite"] = bool(all(math.isfinite(m) for m in maxima))
    rep.flags["stable"] = bool(all(0.5 < m2 / m1 < 2.0 for m1, m2 in zip(maxima, maxima[1:])))
    rep.curves["max_ratio"] = (np.asarray(N_limits), np.asarray(maxima))
    return rep
