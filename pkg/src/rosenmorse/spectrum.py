"""Bound-state spectrum of the dimensionless Rosen-Morse potential.

The potential is ``V(x) = -alpha (alpha + 1) sech^2 x + 2 beta tanh x`` and
state ``n`` has decay exponents ``b = alpha - n``, ``a = beta / (alpha - n)``.
Its wave function is ``exp(-a x) sech^b(x) P_n^{(b+a, b-a)}(tanh x)``.

Negative ``beta`` needs no special treatment in the closed forms; only the
bound-state condition uses ``|beta|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import expit

from .errors import DomainError, MissingScaleError, ThresholdError, UnboundStateError
from .specfun import ln_gamma

__all__ = [
    "COUNT_TOL",
    "THRESHOLD_TOL",
    "Scale",
    "PotentialParams",
    "StateExponents",
    "JacobiParams",
    "count_bound_states",
    "energy",
    "exponents",
    "jacobi_params",
    "exact_jacobi_params",
    "normalization",
    "log_normalization",
    "physical_energy",
    "potential",
]

# n counts as bound only if alpha - sqrt|beta| - n exceeds this
COUNT_TOL = 1e-12
# (alpha - n)^2 - |beta| below this makes 1/(b - a) in the norm blow up
THRESHOLD_TOL = 1e-9


@dataclass(frozen=True)
class Scale:
    """Physical units: well width ``delta``, particle ``mass`` and ``hbar``."""

    delta: float
    mass: float
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("delta", "mass", "hbar"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise DomainError(f"scale.{name} must be positive and finite, got {val!r}")


@dataclass(frozen=True)
class PotentialParams:
    alpha: float
    beta: float = 0.0
    scale: Scale | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise DomainError("alpha and beta must be finite")
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")

    @property
    def symmetric(self) -> bool:
        return self.beta == 0


@dataclass(frozen=True)
class StateExponents:
    n: int
    energy: float
    a: float
    b: float


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi parameters ``(A, B)``.

    Fields hold floats, or :class:`~fractions.Fraction` values when the
    parameters feed an exact raising chain.
    """

    A: float
    B: float


def count_bound_states(p: PotentialParams) -> int:
    """Number of integers ``n >= 0`` with ``n < alpha - sqrt|beta|``."""
    top = p.alpha - math.sqrt(abs(p.beta)) - COUNT_TOL
    if top <= 0:
        return 0
    return math.ceil(top)


def _check_bound(p: PotentialParams, n: int) -> None:
    if int(n) != n or n < 0 or n >= count_bound_states(p):
        raise UnboundStateError(
            f"n={n} is not a bound state of alpha={p.alpha}, beta={p.beta} "
            f"({count_bound_states(p)} bound states)"
        )


def energy(p: PotentialParams, n: int) -> float:
    _check_bound(p, n)
    b = p.alpha - n
    return -b * b - (p.beta / b) ** 2


def exponents(p: PotentialParams, n: int) -> StateExponents:
    _check_bound(p, n)
    b = p.alpha - n
    return StateExponents(n=int(n), energy=energy(p, n), a=p.beta / b, b=b)


def jacobi_params(e: StateExponents) -> JacobiParams:
    A, B = e.b + e.a, e.b - e.a
    if min(A, B) <= THRESHOLD_TOL:
        raise ThresholdError(
            f"state n={e.n} sits at the binding threshold (A={A:.3g}, B={B:.3g})"
        )
    return JacobiParams(A, B)


def exact_jacobi_params(p: PotentialParams, n: int) -> JacobiParams:
    """Jacobi parameters of state ``n`` as exact rationals of the float inputs."""
    _check_bound(p, n)
    b = Fraction(p.alpha) - n
    a = Fraction(p.beta) / b
    if float(b * b - abs(Fraction(p.beta))) < THRESHOLD_TOL:
        raise ThresholdError(f"state n={n} sits at the binding threshold")
    return JacobiParams(b + a, b - a)


def log_normalization(p: PotentialParams, n: int) -> float:
    """``ln A_n``, with ``A_n > 0`` the normalization constant of state ``n``."""
    e = exponents(p, n)
    a, b = e.a, e.b
    if b * b - abs(p.beta) < THRESHOLD_TOL:
        raise ThresholdError(f"state n={n} is not normalizable (b - |a| too small)")
    # |A_n|^-2 = 2^(2b-1) G(b+a+n+1) G(b-a+n+1) / (n! G(2b+n+1)) * 2b / ((b+a)(b-a))
    log_inv_sq = (
        (2 * b - 1) * math.log(2.0)
        + ln_gamma(b + a + n + 1)
        + ln_gamma(b - a + n + 1)
        - ln_gamma(n + 1)
        - ln_gamma(2 * b + n + 1)
        + math.log(2 * b)
        - math.log(b + a)
        - math.log(b - a)
    )
    return -0.5 * log_inv_sq


def normalization(p: PotentialParams, n: int) -> float:
    return math.exp(log_normalization(p, n))


def physical_energy(p: PotentialParams, e_dimless: float) -> float:
    """Convert a dimensionless energy to physical units, ``hbar^2 E / (2 m delta^2)``."""
    if p.scale is None:
        raise MissingScaleError("physical_energy needs PotentialParams.scale")
    s = p.scale
    return s.hbar**2 * e_dimless / (2.0 * s.mass * s.delta**2)


def potential(p: PotentialParams, x):
    """Dimensionless potential ``-alpha(alpha+1) sech^2 x + 2 beta tanh x``."""
    x = np.asarray(x, dtype=float)
    sech2 = 4.0 * expit(2 * x) * expit(-2 * x)
    return -p.alpha * (p.alpha + 1) * sech2 + 2 * p.beta * np.tanh(x)
