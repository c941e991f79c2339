"""Time the numba kernels against their pure-numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--points 20000] [--grid 8000]

Both implementations are called directly, so the ``ROSENMORSE_NUMBA`` flag
does not matter here.  The first numba call (compilation or cache load) is
excluded from the timings and reported separately.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from rosenmorse import _kernels
from rosenmorse.ladder import raising_chain
from rosenmorse.oracles import Grid1D
from rosenmorse.spectrum import PotentialParams, potential


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def horner_case(points: int):
    hi, lo = raising_chain(PotentialParams(25.0, 3.0))[20].as_double_double()
    y = np.linspace(0.0, 2.0, points)
    return (hi, lo, y), _kernels.horner_dd_numpy, _kernels.horner_dd_numba


def bisection_case(n: int):
    p = PotentialParams(3.3, 0.5)
    g = Grid1D(16.0, n)
    diag = 2.0 / g.h**2 + potential(p, g.points)
    off2 = np.full(n - 1, 1.0 / g.h**4)
    lower = float(np.min(diag) - 2.0 / g.h**2)
    upper = -2.0 * abs(p.beta)
    k = _kernels.sturm_count_numpy(diag, off2, upper)
    args = (diag, off2, lower, upper, k, 1e-13)
    return args, _kernels.tridiag_eigvals_below_numpy, _kernels.tridiag_eigvals_below_numba


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=20000, help="evaluation points for horner_dd")
    ap.add_argument("--grid", type=int, default=8000, help="matrix size for the Sturm bisection")
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    cases = [
        (f"horner_dd  deg 20 x {args.points} pts", *horner_case(args.points)),
        (f"sturm bisection  N={args.grid}", *bisection_case(args.grid)),
    ]
    print(f"{'kernel':<34}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}{'first call [s]':>16}{'max |diff|':>13}")
    for name, call_args, np_fn, nb_fn in cases:
        t0 = time.perf_counter()
        nb_out = nb_fn(*call_args)
        first = time.perf_counter() - t0
        np_out = np_fn(*call_args)
        diff = float(np.max(np.abs(np.asarray(nb_out) - np.asarray(np_out))))
        t_np = best_of(lambda: np_fn(*call_args), args.repeat)
        t_nb = best_of(lambda: nb_fn(*call_args), args.repeat)
        print(f"{name:<34}{t_np:>12.4g}{t_nb:>12.4g}{t_np / t_nb:>10.1f}{first:>16.3g}{diff:>13.3g}")


if __name__ == "__main__":
    main()
