"""One-parameter LCT subgroups, parameter composition and group-law checks.

Three families of parameter curves ``α ↦ (A, B, C)``:

* ``I`` (trigonometric): ``(cot(ωα)/λ − γ, csc(ωα)/λ, cot(ωα)/λ + γ)``
* ``II`` (parabolic): ``(1/(λα) − γ, 1/(λα), 1/(λα) + γ)``
* ``III`` (hyperbolic): ``(coth(ωα)/λ − γ, csch(ωα)/λ, coth(ωα)/λ + γ)``

Composition order
-----------------
``compose(outer, inner)`` returns the parameters of ``outer ∘ inner``:
``inner`` is applied first.  Hence ``compose(P(β), P(α)) == P(α + β)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from .engine import LCTParams, lct_chirp, lct_on_grid
from .errors import DegenerateParameterError, ParameterError
from .signals import AliasPolicy, SampledSignal, norm

__all__ = [
    "COMPOSE_TOL",
    "FAMILIES",
    "GroupResidual",
    "POLE_TOL",
    "SubgroupSpec",
    "compose",
    "d_solution",
    "family_params",
    "group_residual",
    "operator_group_check",
]

FAMILIES = ("I", "II", "III")
#: Minimum distance of the group argument from a pole.
POLE_TOL = 1e-6
#: Minimum ``|A_inner + C_outer|`` for two transforms to compose.
COMPOSE_TOL = 1e-12


@dataclass(frozen=True)
class SubgroupSpec:
    """Family tag and the knobs ``ω`` (frequency), ``λ`` (scale), ``γ`` (chirp shift)."""

    family: str
    omega: float = 1.0
    lam: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"family must be one of {FAMILIES}, got {self.family!r}")
        for name in ("omega", "lam", "gamma"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ParameterError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.lam == 0.0:
            raise ParameterError("lambda must be nonzero")
        if self.family != "II" and self.omega == 0.0:
            raise ParameterError("omega must be nonzero for families I and III")

    @classmethod
    def from_dict(cls, data: dict) -> "SubgroupSpec":
        return cls(data["family"], data.get("omega", 1.0), data.get("lambda", 1.0),
                   data.get("gamma", 0.0))

    def to_dict(self) -> dict:
        return {"family": self.family, "omega": self.omega, "lambda": self.lam, "gamma": self.gamma}


@dataclass(frozen=True)
class GroupResidual:
    """Absolute deviations in the four composition equations."""

    residual_A: float
    residual_B: float
    residual_C: float
    residual_D: float

    def max(self) -> float:
        return max(self.residual_A, self.residual_B, self.residual_C, self.residual_D)

    def to_dict(self) -> dict:
        return asdict(self)


def _group_arg(spec: SubgroupSpec, alpha: float, pole_tol: float) -> float:
    """Return the argument of cot/coth (or ``λα`` for family II), checking poles."""
    alpha = float(alpha)
    if spec.family == "I":
        th = spec.omega * alpha
        dist = abs(math.remainder(th, math.pi))
        if dist < pole_tol:
            raise DegenerateParameterError(
                f"family I pole: ωα = {th:.12g} lies {dist:.3g} from a multiple of π (tolerance {pole_tol:g})"
            )
        return th
    th = alpha if spec.family == "II" else spec.omega * alpha
    if abs(th) < pole_tol:
        raise DegenerateParameterError(f"family {spec.family} pole at α = 0 (got {alpha:.3g})")
    return th


def d_solution(spec: SubgroupSpec, alpha: float, *, pole_tol: float = POLE_TOL) -> complex:
    """Normalizer ``D(α)`` compatible with the group law.

    The modulus is ``√(|B|/2π)``.  The phase is ``−(π/4)·sgn B`` for
    families II and III, the principal ``√(B/(2πi))``.  For family I it is
    additionally shifted by ``sgn(λ)·ωα/2`` with ``ωα`` reduced to
    ``(−π, π]``, which reproduces the FRFT normalizer ``√((1 − i cot α)/2π)``
    and tends to the identity as ``α → 0⁺``.
    """
    th = _group_arg(spec, alpha, pole_tol)
    if spec.family == "I":
        B = 1.0 / (spec.lam * math.sin(th))
        red = math.remainder(th, 2 * math.pi)
        if red <= -math.pi:
            red += 2 * math.pi
        phase = math.copysign(1.0, spec.lam) * red / 2 - math.copysign(math.pi / 4, B)
    else:
        B = 1.0 / (spec.lam * (th if spec.family == "II" else math.sinh(th)))
        phase = -math.copysign(math.pi / 4, B)
    return math.sqrt(abs(B) / (2 * math.pi)) * cmath.exp(1j * phase)


def family_params(spec: SubgroupSpec, alpha: float, *, pole_tol: float = POLE_TOL) -> LCTParams:
    """LCT parameters of the family member at ``alpha``.

    Raises
    ------
    DegenerateParameterError
        If the group argument is within ``pole_tol`` of a pole.
    """
    th = _group_arg(spec, alpha, pole_tol)
    if spec.family == "I":
        cot, csc = math.cos(th) / math.sin(th), 1.0 / math.sin(th)
    elif spec.family == "II":
        cot = csc = 1.0 / th
    else:
        cot, csc = 1.0 / math.tanh(th), 1.0 / math.sinh(th)
    lam, g = spec.lam, spec.gamma
    return LCTParams(cot / lam - g, csc / lam, cot / lam + g, d_solution(spec, alpha, pole_tol=pole_tol))


def compose(outer: LCTParams, inner: LCTParams, *, tol: float = COMPOSE_TOL) -> LCTParams:
    """Parameters of ``outer ∘ inner`` (``inner`` applied first).

    Integrating out the intermediate variable ``w`` leaves the Gaussian
    integral ``∫ e^{i(s w²/2 − w·(…))} dw`` with ``s = A_inner + C_outer``,
    which yields the closed form below.

    Raises
    ------
    DegenerateParameterError
        If ``|s| < tol``.
    """
    s = inner.A + outer.C
    if abs(s) < tol:
        raise DegenerateParameterError(f"non-composable: A_inner + C_outer = {s:.3g}")
    A = outer.A - outer.B ** 2 / s
    B = outer.B * inner.B / s
    C = inner.C - inner.B ** 2 / s
    D = outer.D * inner.D * math.sqrt(2 * math.pi / abs(s)) * cmath.exp(0.25j * math.pi * math.copysign(1.0, s))
    return LCTParams(A, B, C, D)


def group_residual(spec: SubgroupSpec, alpha: float, beta: float, *,
                   pole_tol: float = POLE_TOL) -> GroupResidual:
    """Componentwise ``|compose(P(β), P(α)) − P(α+β)|``."""
    pa = family_params(spec, alpha, pole_tol=pole_tol)
    pb = family_params(spec, beta, pole_tol=pole_tol)
    pab = family_params(spec, alpha + beta, pole_tol=pole_tol)
    c = compose(pb, pa)
    return GroupResidual(abs(c.A - pab.A), abs(c.B - pab.B), abs(c.C - pab.C), abs(c.D - pab.D))


def operator_group_check(spec: SubgroupSpec, alpha: float, beta: float, f: SampledSignal, *,
                         policy: AliasPolicy | None = None, pole_tol: float = POLE_TOL) -> float:
    """Relative L² distance between ``T_α(T_β f)`` and ``T_{α+β} f``.

    The composite goes through two chirp-path transforms.  The output chirp
    of the inner transform is folded into the input chirp of the outer one
    so the intermediate signal stays narrow-band.  The reference is the
    direct-path transform evaluated on the composite's output grid; grid
    points the direct path cannot resolve contribute the composite's own
    energy there.  A zero argument is the identity.
    """
    nf = norm(f)
    if nf == 0.0:
        return 0.0
    if alpha == 0 and beta == 0:
        return 0.0
    pab = family_params(spec, alpha + beta, pole_tol=pole_tol)
    if beta == 0:
        comp = lct_chirp(family_params(spec, alpha, pole_tol=pole_tol), f, policy=policy)
    elif alpha == 0:
        comp = lct_chirp(family_params(spec, beta, pole_tol=pole_tol), f, policy=policy)
    else:
        pa = family_params(spec, alpha, pole_tol=pole_tol)
        pb = family_params(spec, beta, pole_tol=pole_tol)
        mid = lct_chirp(LCTParams(0.0, pb.B, pb.C, pb.D), f, policy=policy)
        comp = lct_chirp(LCTParams(pa.A, pa.B, pa.C + pb.A, pa.D), mid, policy=policy)
    ref, mask = lct_on_grid(pab, f, comp.grid, policy=policy)
    diff = np.where(mask, comp.values - ref.values, comp.values)
    return math.sqrt(comp.grid.spacing * float(np.sum(np.abs(diff) ** 2))) / nf
