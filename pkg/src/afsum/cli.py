"""Command-line frontend: build operators, apply them, emit documents and tables.

Exit codes: 0 success, 1 domain errors (non-regular systems, incompatible
bases, forbidden parameters), 2 usage errors.  Diagnostics go to stderr;
data goes to files or stdout only.
"""

import argparse
import re
import sys

from . import classics, diffop, extrapop, prony, regularize, serialize, series
from .errors import AfsumError
from .prony import MomentSequence
from .series import FunctionSpec


def _complex_arg(text):
    try:
        return series.parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid_arg(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:end:count")
    try:
        start, end, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be start:end:count") from None
    if count < 2:
        raise argparse.ArgumentTypeError("grid needs at least two points")
    return (start, end, count)


def _function_arg(text):
    try:
        if text.startswith("series:"):
            path = text[len("series:"):]
            return FunctionSpec("raw_series", tuple(_read_complex_lines(path)))
        return series.parse_function_spec(text)
    except (ValueError, OSError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_complex_lines(path):
    values = []
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "," in line:
                re_text, im_text = line.split(",", 1)
                values.append(complex(float(re_text), float(im_text)))
            else:
                values.append(complex(float(line), 0.0))
    return values


def _read_moments(path):
    values = _read_complex_lines(path)
    if not values or len(values) % 2 != 0:
        raise argparse.ArgumentTypeError(
            f"moments file {path} must hold a positive even number of values"
        )
    return MomentSequence(len(values) // 2, tuple(values))


class _Parser(argparse.ArgumentParser):
    # let values like "-0.5:0.5:101" or "-1+2i" follow a flag without "="
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d|^-\.\d")


def _build_parser():
    parser = _Parser(
        prog="afsum",
        description="Amplitude-and-frequency sums: moment solving, "
        "regularization, differentiation and extrapolation operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a moments file into a sum document")
    p_solve.add_argument("moments", help="file with one `re` or `re,im` moment per line")
    p_solve.add_argument("--emit", help="output path (default: stdout)")

    p_interp = sub.add_parser("interp", help="interpolate f over basis h, regularizing as needed")
    p_interp.add_argument("--f", required=True, type=_function_arg, dest="target")
    p_interp.add_argument("--h", required=True, type=_function_arg, dest="basis")
    p_interp.add_argument("-n", required=True, type=int)
    p_interp.add_argument("--emit")
    p_interp.add_argument("--grid", type=_grid_arg)
    p_interp.add_argument("--table", help="CSV path for an error table over --grid")

    p_diff = sub.add_parser("diff", help="build the differentiation operator")
    p_diff.add_argument("-n", required=True, type=int)
    p_diff.add_argument("-p", type=_complex_arg, default=complex(-1.0))
    p_diff.add_argument("--emit")
    p_diff.add_argument("--f", type=_function_arg, dest="target")
    p_diff.add_argument("--grid", type=_grid_arg)
    p_diff.add_argument("--table")

    p_extrap = sub.add_parser("extrap", help="build the extrapolation operator")
    p_extrap.add_argument("-n", required=True, type=int)
    p_extrap.add_argument("-a", required=True, type=float)
    p_extrap.add_argument("-p", required=True, type=float)
    p_extrap.add_argument("--emit")
    p_extrap.add_argument("--f", type=_function_arg, dest="target")
    p_extrap.add_argument("--grid", type=_grid_arg)
    p_extrap.add_argument("--table")

    p_quad = sub.add_parser("quad", help="print quadrature nodes and weights")
    p_quad.add_argument("--rule", required=True, choices=("legendre", "chebyshev"))
    p_quad.add_argument("-n", required=True, type=int)

    p_bessel = sub.add_parser("bessel", help="error table for a Bessel approximant")
    p_bessel.add_argument("--which", required=True, choices=("j0", "j0prime", "j0sinc"))
    p_bessel.add_argument("-n", required=True, type=int)
    p_bessel.add_argument("--grid", type=_grid_arg, default=(0.0, 10.0, 101))
    p_bessel.add_argument("--table", required=True)

    p_reg = sub.add_parser("regularize", help="regularize a moments file and solve")
    p_reg.add_argument("moments", help="file with one `re` or `re,im` moment per line")
    p_reg.add_argument("-p", type=_complex_arg)
    p_reg.add_argument("-q", type=_complex_arg)
    p_reg.add_argument("--h", type=_function_arg, dest="basis")
    p_reg.add_argument("--emit")
    return parser


def _emit(doc, path):
    text = serialize.dumps(doc)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _write_table(rows, path):
    with open(path, "w") as handle:
        classics.write_error_table(rows, handle)


def _require_table_inputs(args, parser_hint):
    if args.table is not None and (args.target is None or args.grid is None):
        print(f"error: {parser_hint} --table requires --f and --grid", file=sys.stderr)
        return False
    return True


def _cmd_solve(args):
    moments = _read_moments(args.moments)
    af = prony.solve(moments)
    _emit(serialize.afsum_document(af), args.emit)
    return 0


def _cmd_interp(args):
    af = regularize.regularized_interpolant(args.target, args.basis, args.n)
    _emit(serialize.afsum_document(af), args.emit)
    if args.table is not None:
        if args.grid is None:
            print("error: interp --table requires --grid", file=sys.stderr)
            return 2
        rows = classics.error_table(
            args.target, lambda x: prony.evaluate_sum(af, x), args.grid
        )
        _write_table(rows, args.table)
    return 0


def _cmd_diff(args):
    op = diffop.build_diff_operator(args.n, args.p)
    if args.emit is not None or args.table is None:
        _emit(serialize.diff_document(op), args.emit)
    if not _require_table_inputs(args, "diff"):
        return 2
    if args.table is not None:
        target = args.target
        exact = lambda x: x * series.evaluate_derivative(target, x)
        rows = classics.error_table(
            exact, lambda x: diffop.apply_diff(op, target, x), args.grid
        )
        _write_table(rows, args.table)
    return 0


def _cmd_extrap(args):
    op = extrapop.build_extrap_operator(args.n, args.a, args.p)
    if args.emit is not None or args.table is None:
        _emit(serialize.extrap_document(op), args.emit)
    if not _require_table_inputs(args, "extrap"):
        return 2
    if args.table is not None:
        target = args.target
        exact = lambda x: series.evaluate(target, op.a * x)
        rows = classics.error_table(
            exact, lambda x: extrapop.apply_extrap(op, target, x), args.grid
        )
        _write_table(rows, args.table)
    return 0


def _cmd_quad(args):
    rule = (
        classics.gauss_legendre(args.n)
        if args.rule == "legendre"
        else classics.gauss_chebyshev(args.n)
    )
    for node, weight in zip(rule.nodes, rule.weights):
        sys.stdout.write(f"{node:.17g},{weight:.17g}\n")
    return 0


def _cmd_bessel(args):
    j0 = FunctionSpec("bessel_j0")
    if args.which == "j0":
        exact = j0
        approx = classics.bessel_j0_sum(args.n)
    elif args.which == "j0prime":
        exact = lambda x: series.evaluate_derivative(j0, x)
        approx = classics.bessel_j0_prime_sum(args.n)
    else:
        exact = j0
        approx = classics.bessel_j0_sinc_sum(args.n)
    rows = classics.error_table(exact, approx, args.grid)
    _write_table(rows, args.table)
    return 0


def _cmd_regularize(args):
    moments = _read_moments(args.moments)
    p = regularize.choose_p(moments) if args.p is None else args.p
    q = p if args.q is None else args.q
    params = regularize.separate_roots(moments, p, q)
    varied = regularize.varied_moments(moments, params.p, params.effective_q)
    af = prony.solve(varied)
    if args.basis is not None:
        from dataclasses import replace

        n = moments.n
        hm = series.maclaurin_coeffs(args.basis, 2 * n - 1).coefficients
        p_c = complex(params.p)
        q_eff = complex(params.effective_q)
        binomial = None
        if p_c != 0 or q_eff != 0:
            binomial = prony.CorrectionBinomial(
                c1=-p_c * hm[n - 1], k1=n - 1, c2=-q_eff * hm[2 * n - 1], k2=2 * n - 1
            )
        af = replace(af, basis=args.basis, binomial=binomial)
    doc = serialize.afsum_document(af)
    doc["p"] = [complex(params.p).real, complex(params.p).imag]
    doc["q"] = [complex(params.q).real, complex(params.q).imag]
    doc["delta"] = [complex(params.delta).real, complex(params.delta).imag]
    _emit(doc, args.emit)
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "interp": _cmd_interp,
    "diff": _cmd_diff,
    "extrap": _cmd_extrap,
    "quad": _cmd_quad,
    "bessel": _cmd_bessel,
    "regularize": _cmd_regularize,
}


def run(argv):
    """Parse and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AfsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))
