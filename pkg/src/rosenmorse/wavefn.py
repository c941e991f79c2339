"""Bound-state wave functions built from the raising chain.

``psi_n(x) = A_n exp(-a x) sech^b(x) P(y)`` with ``y = 1 - tanh x`` and ``P``
the shifted-basis Jacobi polynomial of state ``n``.  Derivatives are taken in
closed form with ``dy/dx = -sech^2 x``, so no finite differences enter the
Schrodinger residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import expit

from . import _kernels
from .errors import DomainError
from .ladder import ShiftedPolynomial, raising_chain
from .spectrum import (
    PotentialParams,
    StateExponents,
    count_bound_states,
    exponents,
    log_normalization,
    potential,
)

__all__ = [
    "Eigenstate",
    "SampleTable",
    "build_state",
    "build_states",
    "eval_state",
    "eval_derivatives",
    "log_abs_state",
    "schrodinger_residual",
    "node_count",
    "sample",
]

_LN2 = math.log(2.0)


def _derivative(coeffs) -> list:
    """Coefficients of ``dP/dy`` for ``P = sum_m c_m y^m`` (keeps Fractions exact)."""
    coeffs = list(coeffs)
    if len(coeffs) == 1:
        return [coeffs[0] * 0]
    return [c * k for k, c in enumerate(coeffs[1:], start=1)]


@dataclass(frozen=True, eq=False)
class Eigenstate:
    n: int
    exponents: StateExponents
    norm: float
    poly: ShiftedPolynomial
    params: PotentialParams

    def __post_init__(self) -> None:
        if self.poly.degree != self.n:
            raise DomainError(f"polynomial degree {self.poly.degree} != state index {self.n}")

    @property
    def energy(self) -> float:
        return self.exponents.energy

    @cached_property
    def _dd(self):
        """Double-double coefficients of ``P``, ``dP/dy`` and ``d2P/dy2``."""
        c0 = self.poly.coeffs
        c1 = _derivative(c0)
        c2 = _derivative(c1)
        return tuple(
            ShiftedPolynomial(self.poly.params, c).as_double_double() for c in (c0, c1, c2)
        )

    def _pieces(self, x: np.ndarray, order: int):
        a, b = self.exponents.a, self.exponents.b
        ax = np.abs(x)
        ln_cosh = ax + np.log1p(np.exp(-2.0 * ax)) - _LN2
        env = np.exp(math.log(self.norm) - a * x - b * ln_cosh)
        y = 2.0 * expit(-2.0 * x)
        polys = [_kernels.horner_dd(hi, lo, y) for hi, lo in self._dd[: order + 1]]
        return env, polys


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def eval_state(s: Eigenstate, x):
    x, scalar = _as_array(x)
    env, (p,) = s._pieces(np.atleast_1d(x), 0)
    out = (env * p).reshape(x.shape)
    return float(out) if scalar else out


def log_abs_state(s: Eigenstate, x):
    """``ln|psi(x)|``, finite far beyond where ``psi`` itself underflows."""
    x, scalar = _as_array(x)
    xs = np.atleast_1d(x)
    a, b = s.exponents.a, s.exponents.b
    ax = np.abs(xs)
    ln_cosh = ax + np.log1p(np.exp(-2.0 * ax)) - _LN2
    hi, lo = s._dd[0]
    p = _kernels.horner_dd(hi, lo, 2.0 * expit(-2.0 * xs))
    with np.errstate(divide="ignore"):
        out = (math.log(s.norm) - a * xs - b * ln_cosh + np.log(np.abs(p))).reshape(x.shape)
    return float(out) if scalar else out


def eval_derivatives(s: Eigenstate, x):
    """Return ``(psi, psi', psi'')`` at ``x``."""
    x, scalar = _as_array(x)
    xs = np.atleast_1d(x)
    env, (p, py, pyy) = s._pieces(xs, 2)
    a, b = s.exponents.a, s.exponents.b
    v = np.tanh(xs)
    sech2 = 4.0 * expit(2.0 * xs) * expit(-2.0 * xs)
    drift = a + b * v
    psi = env * p
    d1 = env * (-drift * p - sech2 * py)
    d2 = env * (
        (drift * drift - b * sech2) * p
        + 2.0 * (drift + v) * sech2 * py
        + sech2 * sech2 * pyy
    )
    out = tuple(t.reshape(x.shape) for t in (psi, d1, d2))
    if scalar:
        return tuple(float(t) for t in out)
    return out


def build_state(p: PotentialParams, n: int) -> Eigenstate:
    e = exponents(p, n)
    poly = raising_chain(p, n)[n]
    return Eigenstate(n, e, math.exp(log_normalization(p, n)), poly, p)


def build_states(p: PotentialParams) -> list[Eigenstate]:
    count = count_bound_states(p)
    if count == 0:
        return []
    chain = raising_chain(p, count - 1)
    return [
        Eigenstate(n, exponents(p, n), math.exp(log_normalization(p, n)), chain[n], p)
        for n in range(count)
    ]


def schrodinger_residual(s: Eigenstate, x):
    """``-psi'' - alpha(alpha+1) sech^2 x psi + 2 beta tanh x psi - E psi``."""
    x, scalar = _as_array(x)
    psi, _, d2 = eval_derivatives(s, np.atleast_1d(x))
    xs = np.atleast_1d(x)
    al, be = s.params.alpha, s.params.beta
    sech2 = 4.0 * expit(2.0 * xs) * expit(-2.0 * xs)
    r = -d2 - al * (al + 1) * sech2 * psi + 2 * be * np.tanh(xs) * psi - s.energy * psi
    r = r.reshape(x.shape)
    return float(r) if scalar else r


def _sign_changes(values: np.ndarray) -> int:
    sg = np.sign(values)
    sg = sg[sg != 0]
    return int(np.count_nonzero(sg[1:] != sg[:-1]))


def node_count(s: Eigenstate, lo: float, hi: float, points: int) -> int:
    if not lo < hi:
        raise DomainError("node_count needs lo < hi")
    if points < 100:
        raise DomainError("node_count needs at least 100 points")
    return _sign_changes(eval_state(s, np.linspace(lo, hi, points)))


@dataclass(frozen=True, eq=False)
class SampleTable:
    xs: np.ndarray
    psis: np.ndarray
    potential: np.ndarray | None = None
    energy: float | None = None

    def __post_init__(self) -> None:
        if self.xs.shape != self.psis.shape:
            raise DomainError("xs and psis differ in length")
        if self.potential is not None and self.potential.shape != self.xs.shape:
            raise DomainError("potential column differs in length")
        if np.any(np.diff(self.xs) <= 0):
            raise DomainError("xs must be strictly increasing")


def sample(s: Eigenstate, lo: float, hi: float, points: int, with_potential: bool = False) -> SampleTable:
    if not lo < hi:
        raise DomainError("sample needs lo < hi")
    if points < 2:
        raise DomainError("sample needs at least 2 points")
    xs = np.linspace(lo, hi, points)
    psis = eval_state(s, xs)
    if with_potential:
        return SampleTable(xs, psis, potential(s.params, xs), s.energy)
    return SampleTable(xs, psis)
