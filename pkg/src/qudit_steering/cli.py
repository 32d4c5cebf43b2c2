"""Command line front end.

Exit codes: 0 success, 1 domain or validation failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from pathlib import Path

from .coarse import OutcomeDistribution, coarse_correlation, coarse_covariance, qudit_coarse
from .correlation import correlation_tensor
from .state import DEFAULT_TOL, InvalidInputError, ParseError, load_density, normalized, validate_density
from .steering import (
    STEERABLE_NOTE,
    SteeringFunctional,
    steering_check,
    sweep_gisin,
    sweep_werner,
)
from .xstates import WERNER_P_MAX, WERNER_P_MIN, gisin, werner, xstate_to_density

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

CSV_HEADER = "param,lhs,rhs,fulfilled,entangled,psd"
CSV_BOTH_EXTRA = "lhs_literal,rhs_literal,fulfilled_literal"

_FUNCTIONALS = {"sum_squared": SteeringFunctional.SUM_SQUARED, "sum_literal": SteeringFunctional.SUM_LITERAL}


def fmt(x: float) -> str:
    return f"{x:.12g}"


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _load(path, normalize=False, tol=DEFAULT_TOL):
    rho = load_density(path)
    return normalized(rho, tol) if normalize else rho


def cmd_validate(args, out) -> int:
    rho = _load(args.path, args.normalize, args.tol)
    report = validate_density(rho, args.tol)
    print(f"convention={rho.convention.value}", file=out)
    for line in report.lines():
        print(line, file=out)
    print("eigenvalues=" + " ".join(fmt(x) for x in report.eigenvalues), file=out)
    return EXIT_OK if report.valid else EXIT_DOMAIN


def _steer_state(args):
    if args.werner is not None:
        return xstate_to_density(werner(args.werner))
    if args.gisin is not None:
        x, a = args.gisin
        if x.imag:
            raise InvalidInputError(f"Gisin x must be real, got {x}")
        return xstate_to_density(gisin(x.real, a, args.b))
    return _load(args.path, args.normalize, args.tol)


def cmd_steer(args, out) -> int:
    rho = _steer_state(args)
    functionals = list(_FUNCTIONALS.values()) if args.functional == "both" else [_FUNCTIONALS[args.functional]]
    for i, f in enumerate(functionals):
        if i:
            print("", file=out)
        for line in steering_check(rho, f, args.tol).lines():
            print(line, file=out)
    print(STEERABLE_NOTE, file=out)
    return EXIT_OK


def _sweep(args, f):
    if args.family == "werner":
        return sweep_werner(args.p_lo, args.p_hi, args.n, f)
    return sweep_gisin(args.a, args.n, f, args.b, args.x_hi)


def sweep_csv(args) -> str:
    both = args.functional == "both"
    primary = SteeringFunctional.SUM_SQUARED if both else _FUNCTIONALS[args.functional]
    records = _sweep(args, primary)
    literal = _sweep(args, SteeringFunctional.SUM_LITERAL) if both else None
    buf = io.StringIO()
    buf.write(CSV_HEADER + ("," + CSV_BOTH_EXTRA if both else "") + "\n")
    for i, r in enumerate(records):
        cells = [fmt(r.param), fmt(r.lhs), fmt(r.rhs), str(int(r.fulfilled)), str(int(r.entangled)), str(int(r.psd))]
        if literal is not None:
            q = literal[i]
            cells += [fmt(q.lhs), fmt(q.rhs), str(int(q.fulfilled))]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def gnuplot_script(csv_path: str, family: str, image: str) -> str:
    xlabel = "p" if family == "werner" else "x"
    return f"""\
# LHS (gray) and RHS (black) of the steering inequality, {family} family
set terminal pngcairo size 800,600
set output '{image}'
set datafile separator ','
set xlabel '{xlabel}'
set key top left
set grid
plot '{csv_path}' using 1:2 skip 1 with lines lw 2 lc rgb 'gray' title 'max E(m,n)', \\
     '' using 1:3 skip 1 with lines lw 2 lc rgb 'black' title 'rhs'
"""


def cmd_sweep(args, out) -> int:
    text = sweep_csv(args)
    if args.output in (None, "-"):
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    if args.plot_script:
        if args.output in (None, "-"):
            raise InvalidInputError("--plot-script needs -o/--output to name the CSV file")
        script = Path(args.plot_script)
        csv_ref = os.path.relpath(Path(args.output).resolve(), script.resolve().parent)
        image = str(Path(csv_ref).with_suffix(".png"))
        script.write_text(gnuplot_script(csv_ref, args.family, image), encoding="utf-8", newline="\n")
    return EXIT_OK


def cmd_coarse(args, out) -> int:
    rho = _load(args.path, args.normalize, args.tol)
    report = validate_density(rho, args.tol)
    if not report.valid:
        for line in report.lines():
            print(line, file=out)
        return EXIT_DOMAIN
    dist = OutcomeDistribution.from_density(rho)
    c = qudit_coarse(dist)
    t33 = correlation_tensor(rho)[2, 2]
    for name, val in (
        ("p1", c.p1),
        ("p2", c.p2),
        ("pt1", c.pt1),
        ("pt2", c.pt2),
        ("correlation", coarse_correlation(dist)),
        ("covariance", coarse_covariance(dist)),
        ("T33", t33),
    ):
        print(f"{name}={fmt(val)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudit-steering", description="Steering analysis for spin-3/2 qudit states")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_path=True):
        if with_path:
            p.add_argument("path", help="density matrix JSON file")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--normalize", action="store_true", help="rescale traces off by at most 1e-6 (warns)")

    p = sub.add_parser("validate", help="check Hermiticity, trace and positivity")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("steer", help="evaluate the steering inequality for one state")
    common(p, with_path=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("path", nargs="?", help="density matrix JSON file")
    src.add_argument("--werner", type=float, metavar="P")
    src.add_argument("--gisin", type=parse_complex, nargs=2, metavar=("X", "A"))
    p.add_argument("--b", type=parse_complex, default=None, help="Gisin amplitude b (default +sqrt(1-|a|^2))")
    p.add_argument("--functional", choices=[*_FUNCTIONALS, "both"], default="sum_squared")
    p.set_defaults(func=cmd_steer)

    p = sub.add_parser("sweep", help="sweep a state family and write CSV")
    p.add_argument("--family", choices=["werner", "gisin"], required=True)
    p.add_argument("--p-lo", type=float, default=WERNER_P_MIN)
    p.add_argument("--p-hi", type=float, default=WERNER_P_MAX)
    p.add_argument("--a", type=parse_complex, default=0.2)
    p.add_argument("--b", type=parse_complex, default=None)
    p.add_argument("--x-hi", type=float, default=None, help="Gisin upper bound (default x_max)")
    p.add_argument("-n", type=int, default=201)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--functional", choices=[*_FUNCTIONALS, "both"], default="sum_squared")
    p.add_argument("--plot-script", default=None, help="also write a gnuplot script for the CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("coarse", help="coarse-grained outcome probabilities and correlation")
    common(p)
    p.set_defaults(func=cmd_coarse)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvalidInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
