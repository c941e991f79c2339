"""Log-gamma, gamma ratios and generalized binomial coefficients."""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = ["ln_gamma", "gamma_ratio", "generalized_binomial"]


def ln_gamma(x: float) -> float:
    """Return ``ln Gamma(x)`` for finite ``x > 0``.

    Backed by :func:`math.lgamma` (a Lanczos approximation), which is
    accurate to a few ulp on the positive axis.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"ln_gamma needs a finite positive argument, got {x!r}")
    return math.lgamma(x)


def gamma_ratio(x: float, y: float) -> float:
    """Return ``Gamma(x) / Gamma(y)`` through log space."""
    return math.exp(ln_gamma(x) - ln_gamma(y))


def generalized_binomial(alpha: float, k: int) -> float:
    """Return ``alpha (alpha-1) ... (alpha-k+1) / k!`` by direct product.

    Valid for every real ``alpha``, including negative integers where the
    gamma-function form has poles.
    """
    if k < 0 or int(k) != k:
        raise DomainError(f"k must be a non-negative integer, got {k!r}")
    if not math.isfinite(alpha):
        raise DomainError(f"alpha must be finite, got {alpha!r}")
    out = 1.0
    for j in range(int(k)):
        out *= (alpha - j) / (j + 1)
    return out
