"""Independent checks for the raising chain.

Nothing in here shares a code path with :mod:`rosenmorse.ladder`:

* three Jacobi-polynomial evaluations (fixed-parameter three-term recurrence,
  terminating hypergeometric sum, generalized-binomial double sum),
* adaptive quadrature of the Weyl fractional integral,
* a finite-difference eigensolver for the energies,
* Gauss-Legendre overlaps and a numeric check of the symmetric ladder
  operator in its ``x`` form.

The two finite sums are evaluated in mpmath at ``dps`` digits.  Their terms
cancel by up to ~1e15 at degree 20, so a double-precision sum is useless as
a 1e-10 oracle there.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from . import _kernels
from .errors import (
    DegenerateParameterError,
    DomainError,
    ParameterMismatchError,
    SymmetricOnlyError,
    ToleranceNotMetError,
)
from .ladder import ShiftedPolynomial
from .spectrum import JacobiParams, PotentialParams, count_bound_states, exponents, potential
from .specfun import gamma_ratio, ln_gamma
from .wavefn import Eigenstate, build_state, eval_derivatives, eval_state

__all__ = [
    "HypergeometricParams",
    "Grid1D",
    "GridTooCoarseWarning",
    "hypergeometric_params",
    "terminating_hyp2f1",
    "jacobi_three_term",
    "jacobi_three_term_coeffs",
    "jacobi_hypergeometric",
    "jacobi_binomial_expansion",
    "generating_function",
    "weyl_integral_quadrature",
    "conv_closed_form",
    "fd_eigensolver",
    "overlap",
    "raising_factor",
    "lowering_factor",
    "ladder_numeric_check",
]

DEFAULT_DPS = 50


# -- Jacobi polynomials --------------------------------------------------------


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters of ``F(r, s; t; u)``."""

    r: float
    s: float
    t: float


def hypergeometric_params(p: PotentialParams, n: int) -> HypergeometricParams:
    """``r = b - alpha``, ``s = b + alpha + 1``, ``t = b - a + 1`` for state ``n``."""
    e = exponents(p, n)
    return HypergeometricParams(e.b - p.alpha, e.b + p.alpha + 1, e.b - e.a + 1)


def terminating_hyp2f1(h: HypergeometricParams, u: float, dps: int = DEFAULT_DPS) -> float:
    """``F(r, s; t; u)`` for ``r`` a non-positive integer (finite sum)."""
    if h.r > 0 or h.r != int(h.r):
        raise DomainError(f"series only terminates for r a non-positive integer, got {h.r}")
    nterms = -int(h.r)
    with mpmath.workdps(dps):
        r, s, t, z = (mpmath.mpf(float(q)) for q in (h.r, h.s, h.t, u))
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        for k in range(nterms):
            if t + k == 0:
                raise DomainError("t hits a pole before the series terminates")
            term = term * (r + k) * (s + k) / ((t + k) * (k + 1)) * z
            total += term
        return float(total)


def jacobi_three_term(A: float, B: float, n: int, v):
    """``P_n^(A,B)(v)`` by upward three-term recurrence at fixed ``(A, B)``."""
    v = np.asarray(v, dtype=float)
    if np.any(np.abs(v) > 1):
        raise DomainError("jacobi_three_term expects |v| <= 1")
    _check_three_term(A, B, n)
    p_prev = np.ones_like(v)
    if n == 0:
        return p_prev if v.ndim else float(p_prev)
    p = 0.5 * ((A + B + 2) * v + A - B)
    for k in range(1, n):
        s = 2 * k + A + B
        p_prev, p = p, (
            (s + 1) * (s * (s + 2) * v + A * A - B * B) * p
            - 2 * (k + A) * (k + B) * (s + 2) * p_prev
        ) / (2 * (k + 1) * (k + A + B + 1) * s)
    return p if v.ndim else float(p)


def _check_three_term(A: float, B: float, n: int) -> None:
    for k in range(1, n):
        if 2 * k + A + B == 0 or k + A + B + 1 == 0:
            raise DegenerateParameterError(
                f"three-term recurrence breaks down at k={k} for A={A}, B={B}"
            )


def jacobi_three_term_coeffs(A: float, B: float, n: int) -> ShiftedPolynomial:
    """Same recurrence, run on coefficient vectors in powers of ``y = 1 - v``."""
    _check_three_term(A, B, n)
    p_prev = np.array([1.0])
    if n == 0:
        return ShiftedPolynomial(JacobiParams(A, B), p_prev)
    # P_1 = (A + 1) - (A + B + 2) y / 2
    p = np.array([A + 1.0, -(A + B + 2) / 2])
    for k in range(1, n):
        s = 2 * k + A + B
        lin = np.zeros(k + 2)
        lin[: k + 1] += (s * (s + 2) + A * A - B * B) * p
        lin[1:] -= s * (s + 2) * p
        lin *= s + 1
        lin[:k] -= 2 * (k + A) * (k + B) * (s + 2) * p_prev
        p_prev, p = p, lin / (2 * (k + 1) * (k + A + B + 1) * s)
    return ShiftedPolynomial(JacobiParams(A, B), p)


def jacobi_hypergeometric(A: float, B: float, n: int, v: float, dps: int = DEFAULT_DPS) -> float:
    """``Gamma(n+A+1)/(n! Gamma(A+1)) F(-n, n+A+B+1; A+1; (1-v)/2)``."""
    if not A > -1:
        raise DomainError(f"jacobi_hypergeometric needs A > -1, got {A}")
    with mpmath.workdps(dps):
        a, b, z = mpmath.mpf(float(A)), mpmath.mpf(float(B)), (1 - mpmath.mpf(float(v))) / 2
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        prefactor = mpmath.mpf(1)
        for k in range(n):
            prefactor *= (a + n - k) / (k + 1)
            term *= (k - n) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1)) * z
            total += term
        return float(prefactor * total)


def _binom_mp(x, k: int):
    out = mpmath.mpf(1)
    for j in range(k):
        out *= (x - j) / (j + 1)
    return out


def jacobi_binomial_expansion(
    alpha_gf: float, beta_gf: float, n: int, v: float, dps: int = DEFAULT_DPS
) -> float:
    """``P_n^(alpha_gf - n, beta_gf - n)(v)`` as a double generalized-binomial sum.

    ``2^-n sum_m C(alpha_gf, m) C(beta_gf, n-m) (v-1)^(n-m) (v+1)^m``.
    """
    with mpmath.workdps(dps):
        al, be, x = (mpmath.mpf(float(q)) for q in (alpha_gf, beta_gf, v))
        total = mpmath.mpf(0)
        for m in range(n + 1):
            total += _binom_mp(al, m) * _binom_mp(be, n - m) * (x - 1) ** (n - m) * (x + 1) ** m
        return float(total / mpmath.mpf(2) ** n)


def generating_function(alpha_gf: float, beta_gf: float, v: float, s: float) -> float:
    """Closed form of ``sum_n P_n^(alpha_gf - n, beta_gf - n)(v) s^n``."""
    return (1 + (v + 1) * s / 2) ** alpha_gf * (1 + (v - 1) * s / 2) ** beta_gf


# -- Weyl fractional integral --------------------------------------------------


def weyl_integral_quadrature(
    poly: ShiftedPolynomial,
    exponent: float,
    nu: float,
    x: float,
    *,
    convention: str = "v",
    rtol: float = 1e-11,
) -> float:
    """``W^nu[(1-t)^exponent poly(t)](x) = int_x^1 (t-x)^(nu-1) f(t) dt / Gamma(nu)``.

    ``convention="v"`` integrates in the polynomial's own variable on
    ``(-1, 1)``.  With ``convention="u"`` the point ``x`` and the integration
    variable live on ``(0, 1)``, the weight is ``(1-u)^exponent`` and the
    polynomial is read at ``v = 2u - 1``.

    After ``t = x + (1-x) s`` the integral is
    ``(1-x)^(nu+exponent) / Gamma(nu) * int_0^1 s^(nu-1) (1-s)^exponent poly ds``;
    for ``nu < 1`` the endpoint singularity is removed with ``s = w^(1/nu)``.
    """
    if not nu > 0:
        raise DomainError(f"Weyl order must be positive, got {nu}")
    if convention == "v":
        if not -1 < x < 1:
            raise DomainError("x must lie in (-1, 1) for the v convention")

        def to_v(t):
            return t

    elif convention == "u":
        if not 0 < x < 1:
            raise DomainError("x must lie in (0, 1) for the u convention")

        def to_v(t):
            return 2 * t - 1

    else:
        raise DomainError(f"unknown convention {convention!r}")

    hi, lo = poly.as_double_double()

    def poly_at(t):
        return float(_kernels.horner_dd(hi, lo, np.array([1.0 - to_v(t)]))[0])

    if nu < 1:

        def integrand(w):
            s = w ** (1.0 / nu)
            return (1 - s) ** exponent * poly_at(x + (1 - x) * s) / nu

    else:

        def integrand(s):
            return s ** (nu - 1) * (1 - s) ** exponent * poly_at(x + (1 - x) * s)

    val, err, info = integrate.quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=rtol, limit=200, full_output=1)[:3]
    if err > max(100 * rtol * abs(val), 1e-300):
        raise ToleranceNotMetError(f"Weyl quadrature stalled: estimate {val}, error {err}")
    return (1 - x) ** (nu + exponent) * val * math.exp(-ln_gamma(nu))


def conv_closed_form(A: float, B: float, n: int, nu: float, x: float, *, convention: str = "v") -> float:
    """Right side of the Weyl parameter shift for ``f = (1-t)^A P_n^(A,B)(t)``.

    ``(1-x)^(A+nu) Gamma(A+n+1)/Gamma(A+nu+n+1) P_n^(A+nu, B-nu)(x)``.
    """
    v = x if convention == "v" else 2 * x - 1
    return (1 - x) ** (A + nu) * gamma_ratio(A + n + 1, A + nu + n + 1) * jacobi_three_term(A + nu, B - nu, n, v)


# -- finite-difference energies ------------------------------------------------


class GridTooCoarseWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Grid1D:
    """``N`` interior points on ``[-L, L]`` with Dirichlet walls at the ends."""

    L: float
    N: int

    def __post_init__(self) -> None:
        if not self.L > 0:
            raise DomainError("grid half-width must be positive")
        if self.N < 100:
            raise DomainError("grid needs at least 100 interior points")

    @property
    def h(self) -> float:
        return 2 * self.L / (self.N + 1)

    @property
    def points(self) -> np.ndarray:
        return -self.L + self.h * np.arange(1, self.N + 1)


def fd_eigensolver(p: PotentialParams, g: Grid1D) -> np.ndarray:
    """Eigenvalues below ``-2|beta|`` of the 3-point discretized Hamiltonian."""
    h = g.h
    vx = potential(p, g.points)
    if h * h * np.max(np.abs(vx)) > 0.1:
        warnings.warn(
            f"grid too coarse: h^2 max|V| = {h * h * np.max(np.abs(vx)):.3g} > 0.1",
            GridTooCoarseWarning,
            stacklevel=2,
        )
    diag = 2.0 / h**2 + vx
    off2 = np.full(g.N - 1, 1.0 / h**4)
    upper = -2.0 * abs(p.beta)
    lower = float(np.min(diag) - 2.0 / h**2)
    k = _kernels.tridiag_count_below(diag, off2, upper)
    return _kernels.tridiag_eigvals_below(diag, off2, lower, upper, k)


# -- overlaps and the symmetric ladder -----------------------------------------


def _same_potential(s1: Eigenstate, s2: Eigenstate) -> None:
    a, b = s1.params, s2.params
    if (a.alpha, a.beta) != (b.alpha, b.beta):
        raise ParameterMismatchError("states belong to different potentials")


def overlap(s1: Eigenstate, s2: Eigenstate, *, panel: float = 0.25, order: int = 20) -> float:
    """``<psi_1|psi_2>`` by composite Gauss-Legendre on ``[-L, L]``.

    ``L`` is set by the slowest tail, ``exp(-2 (b - |a|)_min L) < 1e-12``,
    and never below 10.
    """
    _same_potential(s1, s2)
    kappa = min(s.exponents.b - abs(s.exponents.a) for s in (s1, s2))
    L = max(math.log(1e12) / (2 * kappa), 10.0)
    npanel = math.ceil(2 * L / panel)
    edges = np.linspace(-L, L, npanel + 1)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    xs = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * weights[None, :]).ravel()
    f = eval_state(s1, xs) * (eval_state(s2, xs) if s2 is not s1 else eval_state(s1, xs))
    return float(math.fsum(ws * f))


def raising_factor(alpha: float, n: int) -> float:
    """``a^+ |n> = raising_factor |n+1>`` for the symmetric potential."""
    return math.sqrt((n + 1) * (2 * alpha - n) * (alpha - n) / (alpha - n - 1))


def lowering_factor(alpha: float, n: int) -> float:
    """``a^- |n> = lowering_factor |n-1>`` for the symmetric potential."""
    return math.sqrt(n * (2 * alpha - n + 1) * (alpha - n) / (alpha - n + 1))


def ladder_numeric_check(p: PotentialParams, n: int, x) -> float:
    """``[-cosh x psi_n' + (alpha-n) sinh x psi_n] - raising_factor * psi_{n+1}``."""
    if p.beta != 0:
        raise SymmetricOnlyError("the local ladder operator exists only for beta = 0")
    if n + 1 >= count_bound_states(p):
        raise DomainError(f"state n={n + 1} is not bound, nothing to raise into")
    lower, upper = build_state(p, n), build_state(p, n + 1)
    x = np.asarray(x, dtype=float)
    psi, d1, _ = eval_derivatives(lower, x)
    raised = -np.cosh(x) * d1 + (p.alpha - n) * np.sinh(x) * psi
    out = raised - raising_factor(p.alpha, n) * eval_state(upper, x)
    return float(out) if np.ndim(out) == 0 else out
