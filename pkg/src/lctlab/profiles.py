"""Dilation profiles ``b(a)`` for the limit operator ``L_a``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ParameterError

__all__ = ["BProfile", "PROFILES", "get_profile"]


@dataclass(frozen=True)
class BProfile:
    """A dilation profile ``a ↦ b(a)`` on the interval ``[a0, a0 + delta]``.

    Parameters
    ----------
    name : str
        Registry key, recorded in reports.
    func : callable
        Vectorised ``b``.
    lipschitz_const : float
        Lipschitz constant of ``b`` valid on the declared interval.
    bound : float
        ``M`` with ``|b(a)| <= M`` on the interval.
    a0, delta : float
        The interval is ``(a0, a0 + delta)``; both endpoints are accepted.
    """

    name: str
    func: Callable = field(repr=False, compare=False)
    lipschitz_const: float
    bound: float
    a0: float = 0.0
    delta: float = 1.0

    def __post_init__(self):
        if not (self.delta > 0):
            raise ParameterError("profile interval length must be positive")
        if self.lipschitz_const < 0 or not (self.bound > 0):
            raise ParameterError("need lipschitz_const >= 0 and bound > 0")

    def __call__(self, a):
        out = self.func(np.asarray(a, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    @property
    def interval(self) -> tuple[float, float]:
        return (self.a0, self.a0 + self.delta)

    @property
    def limit_value(self) -> float:
        """``b(a0)``, the value at the left end of the interval."""
        return self(self.a0)

    @property
    def is_identity_at_zero(self) -> bool:
        """True when ``b(0) = 1`` so that ``L_0`` is the identity."""
        return math.isclose(self(0.0), 1.0, rel_tol=0, abs_tol=1e-14)

    @property
    def is_constant(self) -> bool:
        a = np.linspace(*self.interval, 65)
        v = self(a)
        return bool(np.ptp(v) <= 1e-14 * max(1.0, np.max(np.abs(v))))

    def contains(self, a: float, tol: float = 1e-12) -> bool:
        lo, hi = self.interval
        return lo - tol <= a <= hi + tol

    def check_lipschitz(self, samples: int = 513) -> bool:
        """Check the declared Lipschitz constant and bound on a sample grid."""
        a = np.linspace(*self.interval, samples)
        v = np.asarray(self(a), dtype=float)
        if not np.all(np.isfinite(v)):
            return False
        slopes = np.abs(np.diff(v)) / np.diff(a)
        return bool(np.max(slopes) <= self.lipschitz_const * (1 + 1e-9) + 1e-15
                    and np.max(np.abs(v)) <= self.bound * (1 + 1e-12))

    def with_interval(self, a0: float, delta: float) -> "BProfile":
        return get_profile(self.name, a0, delta)


def _constant_one(a):
    return np.ones_like(a)


def _one_plus_a(a):
    return 1.0 + a


def _sqrt_one_plus_a2(a):
    return np.sqrt(1.0 + a * a)


def _sqrt_one_plus_4a2(a):
    return np.sqrt(1.0 + 4.0 * a * a)


# name -> (b, Lipschitz constant, bound M), the last two as functions of the interval
_REGISTRY = {
    "constant-one": (_constant_one, lambda lo, hi: 0.0, lambda lo, hi: 1.0),
    "one-plus-a": (_one_plus_a, lambda lo, hi: 1.0,
                   lambda lo, hi: max(abs(1 + lo), abs(1 + hi))),
    "sqrt-one-plus-a2": (_sqrt_one_plus_a2, lambda lo, hi: 1.0,
                         lambda lo, hi: math.sqrt(1 + max(lo * lo, hi * hi))),
    "sqrt-one-plus-4a2": (_sqrt_one_plus_4a2, lambda lo, hi: 2.0,
                          lambda lo, hi: math.sqrt(1 + 4 * max(lo * lo, hi * hi))),
}

PROFILES = tuple(_REGISTRY)


def get_profile(name: str, a0: float = 0.0, delta: float = 1.0) -> BProfile:
    """Look up a named profile and attach the interval ``[a0, a0 + delta]``."""
    try:
        func, lip, bound = _REGISTRY[name]
    except KeyError:
        raise ParameterError(f"unknown profile {name!r}; choose from {PROFILES}") from None
    lo, hi = float(a0), float(a0) + float(delta)
    return BProfile(name, func, lip(lo, hi), bound(lo, hi), float(a0), float(delta))
