"""Coefficient-level raising operators for Rosen-Morse eigenstates.

Two recurrences live here.

* The symmetric (``beta = 0``) one works on ``psi_n = sum_m a_mn sech^(alpha-n) x tanh^m x``
  and follows from the local raising operator
  ``a^+ = -cosh x d/dx + (alpha - n) sinh x``.
* The general one maps the Jacobi polynomial of state ``n`` to that of state
  ``n + 1`` in two steps, both acting on coefficients in powers of ``(1 - v)``:
  a local step ``P_n^(A,B) -> P_{n+1}^(A-1,B-1)`` (:func:`apply_recjac`) and a
  Weyl fractional integral of order ``nu`` that moves the parameters to
  ``(A - 1 + nu, B - 1 - nu)`` (:func:`weyl_shift`).

The general chain runs in exact rational arithmetic when its inputs are
:class:`~fractions.Fraction` (the default for :func:`raising_chain`).  The
shifted-basis expansion of a high-degree Jacobi polynomial is badly
conditioned, and coefficients rounded to double precision cannot
reproduce the polynomial at interior points to better than ~1e-4 relative
once the degree reaches ~20.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterMismatchError, UnboundStateError
from .spectrum import (
    COUNT_TOL,
    JacobiParams,
    PotentialParams,
    count_bound_states,
    exact_jacobi_params,
    exponents,
    jacobi_params,
)
from .specfun import ln_gamma

__all__ = [
    "ShiftedPolynomial",
    "TanhPolynomial",
    "WeylOrder",
    "seed_symmetric",
    "raise_symmetric",
    "symmetric_chain",
    "apply_recjac",
    "weyl_shift",
    "raise_general",
    "raising_chain",
    "convert_basis",
]


def _coeff_array(values) -> np.ndarray:
    vals = list(values)
    if vals and all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in vals):
        arr = np.empty(len(vals), dtype=object)
        arr[:] = [Fraction(v) for v in vals]
        return arr
    return np.asarray([float(v) for v in vals], dtype=np.float64)


def _is_exact_number(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


@dataclass(frozen=True, eq=False)
class ShiftedPolynomial:
    """``P(v) = sum_m coeffs[m] (1 - v)^m`` carrying Jacobi parameters ``(A, B)``.

    ``coeffs`` is a float64 array, or an object array of Fractions for
    exact chains (then ``params`` are Fractions too).
    """

    params: JacobiParams
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = _coeff_array(np.atleast_1d(np.asarray(self.coeffs, dtype=object)).tolist())
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("coefficient vector must be 1-d and non-empty")
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def one(cls, params: JacobiParams) -> "ShiftedPolynomial":
        exact = _is_exact_number(params.A) and _is_exact_number(params.B)
        return cls(params, [Fraction(1)] if exact else [1.0])

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_exact(self) -> bool:
        return (
            self.coeffs.dtype == object
            and _is_exact_number(self.params.A)
            and _is_exact_number(self.params.B)
        )

    def as_float(self) -> np.ndarray:
        return self.coeffs.astype(np.float64)

    def as_double_double(self) -> tuple[np.ndarray, np.ndarray]:
        """Coefficients split as ``hi + lo`` with ``|lo| <= ulp(hi)/2``."""
        hi = self.as_float()
        if self.coeffs.dtype != object:
            return hi, np.zeros_like(hi)
        lo = np.array([float(c - Fraction(h)) for c, h in zip(self.coeffs, hi)])
        return hi, lo

    def __call__(self, v):
        """Plain double Horner evaluation in ``1 - v``.  Fine at low degree."""
        y = 1.0 - np.asarray(v, dtype=float)
        out = np.zeros_like(y)
        for c in self.as_float()[::-1]:
            out = out * y + c
        return out


@dataclass(frozen=True, eq=False)
class TanhPolynomial:
    """Symmetric-case state ``psi_n = sech^(alpha-n) x * sum_m coeffs[m] tanh^m x``.

    The normalization constant is folded into ``coeffs``.
    """

    alpha: float
    n: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=np.float64))


@dataclass(frozen=True)
class WeylOrder:
    nu: float

    @classmethod
    def for_step(cls, p: PotentialParams, n: int, exact: bool = False) -> "WeylOrder":
        """Order that carries state ``n``'s parameters to state ``n + 1``'s."""
        if exact:
            al, be = Fraction(p.alpha), Fraction(p.beta)
        else:
            al, be = p.alpha, p.beta
        return cls(be / ((al - n - 1) * (al - n)))


# -- symmetric potential -------------------------------------------------------


def seed_symmetric(alpha: float) -> TanhPolynomial:
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    log_a00 = (
        -alpha * math.log(2.0)
        + 0.5 * (math.log(alpha) + ln_gamma(2 * alpha + 1))
        - ln_gamma(alpha + 1)
    )
    return TanhPolynomial(alpha, 0, [math.exp(log_a00)])


def raise_symmetric(t: TanhPolynomial) -> TanhPolynomial:
    al, n = t.alpha, t.n
    if n + 1 >= al - COUNT_TOL:
        raise UnboundStateError(f"state n={n + 1} is not bound for alpha={al}")
    a = np.zeros(n + 3)
    a[: n + 1] = t.coeffs
    factor = math.sqrt((al - n - 1) / ((n + 1) * (2 * al - n) * (al - n)))
    out = np.empty(n + 2)
    for m in range(n + 2):
        lower = a[m - 1] if m >= 1 else 0.0
        out[m] = factor * ((2 * al - 2 * n + m - 1) * lower - (m + 1) * a[m + 1])
    return TanhPolynomial(al, n + 1, out)


def symmetric_chain(alpha: float, n_max: int) -> list[TanhPolynomial]:
    out = [seed_symmetric(alpha)]
    for _ in range(n_max):
        out.append(raise_symmetric(out[-1]))
    return out


# -- general potential ---------------------------------------------------------


def apply_recjac(a: ShiftedPolynomial) -> ShiftedPolynomial:
    """Map ``P_n^(A,B)`` to ``P_{n+1}^(A-1,B-1)``.

    In the ``(1 - v)`` basis:
    ``2(n+1) b_m = -(A + B + m - 1) a_{m-1} + 2 (A + m) a_m``.
    """
    A, B = a.params.A, a.params.B
    n = a.degree
    c = list(a.coeffs)
    out = []
    for m in range(n + 2):
        t = 0
        if m <= n:
            t += 2 * (A + m) * c[m]
        if m >= 1:
            t -= (A + B + m - 1) * c[m - 1]
        out.append(t / (2 * (n + 1)))
    return ShiftedPolynomial(JacobiParams(A - 1, B - 1), out)


def weyl_shift(b: ShiftedPolynomial, w: WeylOrder) -> ShiftedPolynomial:
    """Apply the Weyl integral of order ``nu``: ``P_N^(A,B) -> P_N^(A+nu, B-nu)``.

    Coefficient ``m`` is scaled by
    ``Gamma(A+nu+N+1) Gamma(A+m+1) / (Gamma(A+N+1) Gamma(A+m+1+nu))``.
    Float inputs go through log-gamma; exact inputs use the equivalent
    finite product ``prod_{j=m+1}^{N} (A+nu+j)/(A+j)``.
    """
    A, B, nu = b.params.A, b.params.B, w.nu
    N = b.degree
    if A + 1 <= 0 or A + 1 + nu <= 0:
        raise DomainError(f"Gamma argument not positive for A={A}, nu={nu}")
    params = JacobiParams(A + nu, B - nu)
    if b.is_exact and _is_exact_number(nu):
        out = []
        for m, bm in enumerate(b.coeffs):
            r = bm
            for j in range(m + 1, N + 1):
                r = r * (A + nu + j) / (A + j)
            out.append(r)
        return ShiftedPolynomial(params, out)
    A, nu = float(A), float(nu)
    head = ln_gamma(A + nu + N + 1) - ln_gamma(A + N + 1)
    ratios = np.array(
        [math.exp(head + (ln_gamma(A + m + 1) - ln_gamma(A + m + 1 + nu))) for m in range(N + 1)]
    )
    return ShiftedPolynomial(JacobiParams(float(params.A), float(params.B)), ratios * b.as_float())


def _state_params(p: PotentialParams, n: int, exact: bool) -> JacobiParams:
    if exact:
        return exact_jacobi_params(p, n)
    return jacobi_params(exponents(p, n))


def raise_general(c: ShiftedPolynomial, p: PotentialParams, n: int) -> ShiftedPolynomial:
    """Jacobi polynomial of state ``n + 1`` from that of state ``n``."""
    if n + 1 >= count_bound_states(p):
        raise UnboundStateError(f"state n={n + 1} is not bound for alpha={p.alpha}, beta={p.beta}")
    if c.degree != n:
        raise ParameterMismatchError(f"expected a degree-{n} polynomial, got degree {c.degree}")
    exact = c.is_exact
    here = _state_params(p, n, exact)
    if not (
        math.isclose(float(c.params.A), float(here.A), rel_tol=1e-9, abs_tol=1e-12)
        and math.isclose(float(c.params.B), float(here.B), rel_tol=1e-9, abs_tol=1e-12)
    ):
        raise ParameterMismatchError(
            f"polynomial parameters {c.params} do not belong to state n={n}"
        )
    nxt = _state_params(p, n + 1, exact)
    shifted = weyl_shift(apply_recjac(ShiftedPolynomial(here, c.coeffs)), WeylOrder.for_step(p, n, exact))
    return ShiftedPolynomial(nxt, shifted.coeffs)


@lru_cache(maxsize=64)
def _exact_chain(alpha: float, beta: float, n_max: int) -> tuple[ShiftedPolynomial, ...]:
    p = PotentialParams(alpha, beta)
    out = [ShiftedPolynomial.one(exact_jacobi_params(p, 0))]
    for n in range(n_max):
        out.append(raise_general(out[-1], p, n))
    return tuple(out)


def raising_chain(p: PotentialParams, n_max: int | None = None, exact: bool = True) -> list[ShiftedPolynomial]:
    """Jacobi polynomials of states ``0..n_max`` (default: every bound state)."""
    count = count_bound_states(p)
    if n_max is None:
        n_max = count - 1
    if n_max < 0 or n_max >= count:
        raise UnboundStateError(f"n_max={n_max} outside the {count} bound states")
    if exact:
        return list(_exact_chain(p.alpha, p.beta, n_max))
    out = [ShiftedPolynomial.one(_state_params(p, 0, False))]
    for n in range(n_max):
        out.append(raise_general(out[-1], p, n))
    return out


def convert_basis(c: ShiftedPolynomial) -> np.ndarray:
    """Monomial coefficients ``d_k`` with ``sum_m c_m (1-v)^m = sum_k d_k v^k``."""
    coeffs = list(c.coeffs)
    n = len(coeffs) - 1
    out = []
    for k in range(n + 1):
        acc = 0
        for m in range(k, n + 1):
            acc += coeffs[m] * math.comb(m, k)
        out.append(-acc if k % 2 else acc)
    return np.array([float(d) for d in out])
