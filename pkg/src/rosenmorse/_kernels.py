"""Hot numeric loops, each with a numba and a pure-numpy implementation.

The numba versions are used when numba imports and the environment variable
``ROSENMORSE_NUMBA`` is not set to ``0``/``false``/``no``.  Both versions are
always importable under explicit names so they can be compared directly
(see ``benchmarks/bench_kernels.py`` and ``tests/test_kernels.py``).

Kernels
-------
horner_dd
    Evaluates ``sum_m c_m y^m`` with coefficients and accumulator held in
    double-double (hi + lo) form.  Shifted-basis Jacobi coefficients alternate
    in sign, and the sum cancels by up to ~1e15 at high degree, so plain
    double Horner loses most digits.
tridiag_eigvals_below
    Sturm-sequence bisection for the lowest eigenvalues of a symmetric
    tridiagonal matrix.

No fastmath anywhere: the error-free transformations depend on strict
IEEE rounding.
"""

from __future__ import annotations

import os

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant
_PIVOT_FLOOR = 1e-300  # replaces an exactly zero Sturm pivot

_flag = os.environ.get("ROSENMORSE_NUMBA", "1").strip().lower()
_WANT_NUMBA = _flag not in ("0", "false", "no", "off")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _WANT_NUMBA
BACKEND = "numba" if USE_NUMBA else "numpy"


# -- double-double Horner ------------------------------------------------------


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def horner_dd_numpy(hi: np.ndarray, lo: np.ndarray, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    ph = np.zeros_like(y)
    pl = np.zeros_like(y)
    for m in range(len(hi) - 1, -1, -1):
        p, e = _two_prod(ph, y)
        e = e + pl * y
        p, e = _quick_two_sum(p, e)
        s, f = _two_sum(p, hi[m])
        f = f + e + lo[m]
        ph, pl = _quick_two_sum(s, f)
    return ph + pl


def _horner_dd_loop(hi, lo, y):
    out = np.empty(y.shape[0])
    for i in range(y.shape[0]):
        yi = y[i]
        ph = 0.0
        pl = 0.0
        # split of y is loop invariant
        t = _SPLITTER * yi
        yh = t - (t - yi)
        yl = yi - yh
        for m in range(hi.shape[0] - 1, -1, -1):
            p = ph * yi
            t = _SPLITTER * ph
            ah = t - (t - ph)
            al = ph - ah
            e = ((ah * yh - p) + ah * yl + al * yh) + al * yl
            e += pl * yi
            s = p + e
            e = e - (s - p)
            p = s
            s = p + hi[m]
            bb = s - p
            f = (p - (s - bb)) + (hi[m] - bb)
            f += e + lo[m]
            ph = s + f
            pl = f - (ph - s)
        out[i] = ph + pl
    return out


# -- Sturm bisection -----------------------------------------------------------


def tridiag_eigvals_below_numpy(
    diag: np.ndarray, off2: np.ndarray, lower: float, upper: float, k: int, tol: float
) -> np.ndarray:
    """Lowest ``k`` eigenvalues in ``[lower, upper]``, all bisected at once."""
    n = diag.shape[0]
    lo = np.full(k, lower)
    hi = np.full(k, upper)
    idx = np.arange(k)
    for _ in range(200):
        if np.all(hi - lo <= tol * np.maximum(1.0, np.abs(lo))):
            break
        mid = 0.5 * (lo + hi)
        q = diag[0] - mid
        cnt = (q < 0).astype(np.int64)
        for i in range(1, n):
            q = np.where(q == 0.0, _PIVOT_FLOOR, q)
            q = diag[i] - mid - off2[i - 1] / q
            cnt += q < 0
        above = cnt > idx
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return 0.5 * (lo + hi)


def sturm_count_numpy(diag, off2, x: float) -> int:
    q = diag[0] - x
    cnt = int(q < 0)
    for i in range(1, diag.shape[0]):
        if q == 0.0:
            q = _PIVOT_FLOOR
        q = diag[i] - x - off2[i - 1] / q
        cnt += q < 0
    return int(cnt)


def _sturm_count(diag, off2, x):
    q = diag[0] - x
    cnt = 1 if q < 0 else 0
    for i in range(1, diag.shape[0]):
        if q == 0.0:
            q = _PIVOT_FLOOR
        q = diag[i] - x - off2[i - 1] / q
        if q < 0:
            cnt += 1
    return cnt


if HAVE_NUMBA:
    horner_dd_numba = numba.njit(cache=True)(_horner_dd_loop)
    _sturm_count_nb = numba.njit(cache=True)(_sturm_count)

    @numba.njit(cache=True)
    def tridiag_eigvals_below_numba(diag, off2, lower, upper, k, tol):
        out = np.empty(k)
        for j in range(k):
            lo = lower
            hi = upper
            for _ in range(200):
                if hi - lo <= tol * max(1.0, abs(lo)):
                    break
                mid = 0.5 * (lo + hi)
                if _sturm_count_nb(diag, off2, mid) > j:
                    hi = mid
                else:
                    lo = mid
            out[j] = 0.5 * (lo + hi)
            lower = lo
        return out

else:  # pragma: no cover
    horner_dd_numba = None
    _sturm_count_nb = None
    tridiag_eigvals_below_numba = None


def horner_dd(hi: np.ndarray, lo: np.ndarray, y) -> np.ndarray:
    """Evaluate a double-double coefficient vector at every point of ``y``."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    if USE_NUMBA:
        return horner_dd_numba(hi, lo, y.ravel()).reshape(y.shape)
    return horner_dd_numpy(hi, lo, y)


def tridiag_eigvals_below(diag, off2, lower: float, upper: float, k: int, tol: float = 1e-13):
    """Lowest ``k`` eigenvalues of the tridiagonal matrix, bracketed by ``[lower, upper]``.

    ``off2`` holds the squared off-diagonal entries.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off2 = np.ascontiguousarray(off2, dtype=np.float64)
    if k <= 0:
        return np.empty(0)
    if USE_NUMBA:
        return tridiag_eigvals_below_numba(diag, off2, float(lower), float(upper), int(k), float(tol))
    return tridiag_eigvals_below_numpy(diag, off2, float(lower), float(upper), int(k), float(tol))


def tridiag_count_below(diag, off2, x: float) -> int:
    """Number of eigenvalues below ``x`` (Sturm sequence sign count)."""
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off2 = np.ascontiguousarray(off2, dtype=np.float64)
    if USE_NUMBA:
        return int(_sturm_count_nb(diag, off2, float(x)))
    return sturm_count_numpy(diag, off2, float(x))
