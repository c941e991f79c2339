"""``rosenmorse`` command line: spectra, coefficients, samples, plot data, verification.

Data goes to stdout as CSV (header row, shortest round-trip floats, LF line
endings) or as one JSON object.  Diagnostics go to stderr.  Exit status is
0 on success, 1 when ``verify`` reports a failed check, and 2 on a bad
argument or a parameter outside the supported domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from .errors import RosenMorseError
from .spectrum import PotentialParams, count_bound_states, potential
from .verify import run_checks
from .wavefn import build_state, build_states, eval_state

__all__ = ["main", "run", "build_parser", "plot_scales", "PLOT_SCALE"]

PLOT_SCALE = 0.4
DEFAULT_POINTS = 401


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnostic instead of usage dump
        raise _ArgError(message)


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _index(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative index, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rosenmorse", description="Rosen-Morse bound states")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name, help_text, *, needs_n=False, grid=False, tol=False):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--alpha", type=float, required=True, help="well depth parameter, > 0")
        sp.add_argument("--beta", type=float, default=0.0, help="asymmetry parameter")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        if needs_n:
            sp.add_argument("--n", type=_index, required=True, help="state index")
        if grid:
            sp.add_argument("--xmin", type=float, default=-10.0)
            sp.add_argument("--xmax", type=float, default=10.0)
            sp.add_argument("--points", type=_positive_int, default=DEFAULT_POINTS)
        if tol:
            sp.add_argument("--tol", type=_positive_float, default=1e-7,
                            help="orthonormality tolerance")
        return sp

    common("spectrum", "energies, exponents and normalizations of every bound state")
    common("coeffs", "shifted-basis Jacobi coefficients of one state", needs_n=True)
    common("sample", "wave function of one state on a uniform grid", needs_n=True, grid=True)
    common("plotdata", "potential and offset, scaled wave functions of all states", grid=True)
    common("verify", "run the invariant suite", tol=True)
    return parser


# -- output ----------------------------------------------------------------------


def _num(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_csv(out, header, rows, comments=()):
    for line in comments:
        out.write(f"# {line}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def _write_json(out, obj):
    json.dump(_jsonable(obj), out, allow_nan=True)
    out.write("\n")


# -- subcommands -----------------------------------------------------------------


def _params(args) -> PotentialParams:
    return PotentialParams(args.alpha, args.beta)


def _note_empty(p: PotentialParams, err) -> bool:
    if count_bound_states(p) == 0:
        err.write(f"rosenmorse: no bound states for alpha={p.alpha!r}, beta={p.beta!r}\n")
        return True
    return False


def _check_grid(args):
    if not args.xmin < args.xmax:
        raise _ArgError("--xmin must be smaller than --xmax")
    if args.points < 2:
        raise _ArgError("--points must be at least 2")


def _cmd_spectrum(args, out, err) -> int:
    p = _params(args)
    _note_empty(p, err)
    states = build_states(p)
    header = ["n", "energy", "a", "b", "norm"]
    rows = [[s.n, s.energy, s.exponents.a, s.exponents.b, s.norm] for s in states]
    if args.format == "json":
        _write_json(out, {
            "params": {"alpha": p.alpha, "beta": p.beta},
            "states": [dict(zip(header, r)) for r in rows],
        })
    else:
        _write_csv(out, header, rows)
    return 0


def _cmd_coeffs(args, out, err) -> int:
    p = _params(args)
    s = build_state(p, args.n)
    A, B = float(s.poly.params.A), float(s.poly.params.B)
    coeffs = s.poly.as_float()
    if args.format == "json":
        _write_json(out, {
            "params": {"alpha": p.alpha, "beta": p.beta, "n": args.n, "A": A, "B": B},
            "states": [{"n": args.n, "A": A, "B": B, "coeffs": coeffs}],
        })
    else:
        _write_csv(out, ["m", "c"], enumerate(coeffs), comments=(f"A={A!r}", f"B={B!r}"))
    return 0


def _cmd_sample(args, out, err) -> int:
    _check_grid(args)
    p = _params(args)
    s = build_state(p, args.n)
    xs = np.linspace(args.xmin, args.xmax, args.points)
    psi = eval_state(s, xs)
    if args.format == "json":
        _write_json(out, {
            "params": {"alpha": p.alpha, "beta": p.beta, "n": args.n},
            "states": [{"n": args.n, "energy": s.energy, "x": xs, "psi": psi}],
        })
    else:
        _write_csv(out, ["x", "psi"], zip(xs, psi))
    return 0


def plot_scales(energies: Sequence[float]) -> list[float]:
    """``PLOT_SCALE`` times the gap to the next level (1.0 for the top level)."""
    out = []
    for n, e in enumerate(energies):
        gap = energies[n + 1] - e if n + 1 < len(energies) else 1.0
        out.append(PLOT_SCALE * gap)
    return out


def _cmd_plotdata(args, out, err) -> int:
    _check_grid(args)
    p = _params(args)
    _note_empty(p, err)
    states = build_states(p)
    xs = np.linspace(args.xmin, args.xmax, args.points)
    vs = potential(p, xs)
    scales = plot_scales([s.energy for s in states])
    curves = [s.energy + k * eval_state(s, xs) for s, k in zip(states, scales)]
    if args.format == "json":
        _write_json(out, {
            "params": {"alpha": p.alpha, "beta": p.beta},
            "x": xs,
            "V": vs,
            "states": [
                {"n": s.n, "energy": s.energy, "scale": k, "curve": c}
                for s, k, c in zip(states, scales, curves)
            ],
        })
        return 0
    header = ["x", "V"]
    for s in states:
        header += [f"E{s.n}", f"psi{s.n}"]
    rows = []
    for i, x in enumerate(xs):
        row = [x, vs[i]]
        for s, c in zip(states, curves):
            row += [s.energy, c[i]]
        rows.append(row)
    _write_csv(out, header, rows)
    return 0


def _cmd_verify(args, out, err) -> int:
    p = _params(args)
    _note_empty(p, err)
    results = run_checks(p, tol=args.tol)
    status = [("skip" if r.skipped else "pass" if r.passed else "FAIL") for r in results]
    ok = all(r.passed for r in results)
    if args.format == "json":
        _write_json(out, {
            "params": {"alpha": p.alpha, "beta": p.beta, "tol": args.tol},
            "passed": ok,
            "checks": [
                {"name": r.name, "status": st, "max_dev": r.max_dev, "tol": r.tol, "detail": r.detail}
                for r, st in zip(results, status)
            ],
        })
    else:
        _write_csv(
            out,
            ["check", "status", "max_dev", "tol", "detail"],
            [[r.name, st, r.max_dev, r.tol, r.detail] for r, st in zip(results, status)],
        )
    return 0 if ok else 1


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "coeffs": _cmd_coeffs,
    "sample": _cmd_sample,
    "plotdata": _cmd_plotdata,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str], out=None, err=None) -> int:
    """Execute one invocation; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    buf = io.StringIO()
    try:
        args = build_parser().parse_args(list(argv))
        code = _COMMANDS[args.command](args, buf, err)
    except _ArgError as exc:
        err.write(f"rosenmorse: error: {exc}\n")
        return 2
    except (RosenMorseError, ValueError, OverflowError) as exc:
        err.write(f"rosenmorse: error: {' '.join(str(exc).split())}\n")
        return 2
    out.write(buf.getvalue())
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
