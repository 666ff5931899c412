"""Command-line interface: ``ccexp <subcommand> [options]``.

All output is CSV (comma separated, header row, 17 significant digits).
Complex numbers are passed as ``RE,IM``. Exit status is 0 on success, 2 for
bad arguments and 3 when a computation fails.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import warnings

import numpy as np

from . import __version__
from .integrands import BUILTIN_NAMES, builtin
from .weights import PositiveRealPartWarning, ExpParam

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

ADMISSIBLE = (
    "z is the complex exponent of exp(z s) on the interval 0 <= s <= 2 "
    "(dimensionless); admissible when Re z <= mu0 = 4."
)


class UsageError(Exception):
    """Raised for arguments that parse but violate a precondition."""


def parse_complex(text: str) -> complex:
    """``'RE,IM'`` -> complex. A bare real number is also accepted."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM (e.g. -40,0), got {text!r}")


def parse_int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def parse_float_list(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def read_config(path: str) -> dict[str, str]:
    """Parse a plain ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    # adding 0.0 folds -0.0 into 0.0
    return "%.17g" % (float(x) + 0.0)


class CsvWriter:
    def __init__(self, stream):
        self.stream = stream

    def row(self, values):
        self.stream.write(",".join(fmt(v) for v in values) + "\n")


# ---------------------------------------------------------------- subcommands


def _check_z(z: complex) -> ExpParam:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PositiveRealPartWarning)
            return ExpParam(z)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _get_integrand(name: str):
    try:
        return builtin(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_weights(args, out: CsvWriter):
    from .weights import compute_weights

    zp = _check_z(args.z)
    table = compute_weights(zp, args.L)
    header = ["n", "omega_re", "omega_im", "rho_re", "rho_im", "phase"]
    err_o = err_r = None
    if args.verify:
        from .oracle import weight_moments

        om, rh = weight_moments(args.L, zp.z)
        err_o = np.abs(table.omega - om)
        err_r = np.abs(table.rho - rh)
        header += ["omega_oracle_abs_err", "rho_oracle_abs_err"]
    out.row(header)
    for n in range(args.L + 1):
        w, r = table.omega[n], table.rho[n]
        row = [n, w.real, w.imag, r.real, r.imag, table.phase_of[n]]
        if args.verify:
            row += [err_o[n], err_r[n]]
        out.row(row)


def _verify_value(f, z: complex) -> complex:
    from .oracle import integrate_angle

    return integrate_angle(f, z)


def cmd_integrate(args, out: CsvWriter):
    from .quadrature import integrate

    f = _get_integrand(args.f)
    if abs(args.z) >= 1e-8:
        _check_z(args.z)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PositiveRealPartWarning)
        res = integrate(f, args.z, args.L)
    header = ["value_re", "value_im", "coeff_tail"]
    row = [res.value.real, res.value.imag, res.coeff_tail]
    if args.verify:
        header.append("oracle_abs_err")
        row.append(abs(res.value - _verify_value(f, args.z)))
    out.row(header)
    out.row(row)


def cmd_convergence(args, out: CsvWriter):
    from .quadrature import convergence_table

    f = _get_integrand(args.f)
    if args.z_count < 1:
        raise UsageError("--z-count must be positive")
    zs = [args.z_base * args.z_factor**r for r in range(args.z_count)]
    for z in zs:
        _check_z(z)
    if args.L_ref <= max(args.L_list):
        raise UsageError("--L-ref must exceed every entry of --L-list")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PositiveRealPartWarning)
        table = convergence_table(f, zs, args.L_list, args.L_ref, threads=args.threads)
    out.row(["L"] + [f"err_r{r}" for r in range(len(zs))])
    for L, errs in zip(args.L_list, table):
        out.row([L] + list(errs))


def cmd_instability(args, out: CsvWriter):
    from .oracle import phase1_unbounded
    from .weights import compute_weights

    zp = _check_z(args.z)
    raw = phase1_unbounded(zp.z, args.L)
    table = compute_weights(zp, args.L)
    out.row(["n", "rho_abs_recurrence", "rho_abs_stable", "phase"])
    for n in range(args.L + 1):
        out.row([n, abs(raw[n]), abs(table.rho[n]), table.phase_of[n]])


def cmd_demo_laplace(args, out: CsvWriter):
    from .laplace import ScalarProblem, heat_sine_exact, invert, tuned_contour

    if not -1.0 < args.alpha < 1.0:
        raise UsageError("--alpha must lie in (-1, 1)")
    if not args.lam_eig > 0:
        raise UsageError("--lam-eig must be positive")
    if not args.T > 0:
        raise UsageError("--T must be positive")
    if args.k_override is not None and not args.k_override > 0:
        raise UsageError("--k-override must be positive")
    times = args.t_list or [args.T]
    if any(not t > 0 for t in times):
        raise UsageError("all times must be positive")
    try:
        contour = tuned_contour(args.T, args.alpha, args.N, k=args.k_override)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    prob = ScalarProblem(args.lam_eig, args.u0, np.sin, args.alpha)
    header = ["t", "U_re", "U_im"]
    closed = args.alpha == 0.0
    if closed:
        header.append("exact_abs_err")
    out.row(header)
    for t in times:
        u = invert(t, prob, contour, args.L, threads=args.threads)
        row = [t, u.real, u.imag]
        if closed:
            row.append(abs(u - heat_sine_exact(t, args.lam_eig, args.u0)))
        out.row(row)


# ---------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("-o", "--output", default=None, help="write CSV here instead of standard output")
    p.add_argument("--config", default=None, help="key = value file; command-line flags take precedence")
    p.add_argument(
        "--threads",
        type=positive_int,
        default=os.cpu_count() or 1,
        help="worker threads for batched evaluations (default: logical processors)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccexp",
        description="Product Clenshaw-Curtis rules for int_0^2 f(s) exp(z s) ds. " + ADMISSIBLE,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True
    names = ", ".join(BUILTIN_NAMES)

    p = sub.add_parser(
        "weights",
        help="weights omega_n(z), rho_n(z) for n = 0..L",
        description="Moments of T_n(s-1) and U_n(s-1) against exp(z s) on [0, 2]. " + ADMISSIBLE,
    )
    p.add_argument("--z", type=parse_complex, required=True, help="exponent as RE,IM")
    p.add_argument("--L", type=positive_int, required=True, help="highest index (L+1 rows)")
    p.add_argument("--verify", action="store_true", help="add absolute errors against brute-force quadrature")
    _common(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser(
        "integrate",
        help="apply the rule to a builtin integrand",
        description=f"Value of the (L+1)-point rule for a builtin f ({names}). " + ADMISSIBLE,
    )
    p.add_argument("--f", required=True, help=f"builtin integrand name[:param], one of {names}")
    p.add_argument("--z", type=parse_complex, required=True, help="exponent as RE,IM")
    p.add_argument("--L", type=positive_int, required=True, help="polynomial degree (L+1 samples of f)")
    p.add_argument("--verify", action="store_true", help="add absolute error against brute-force quadrature")
    _common(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser(
        "convergence",
        help="self-convergence table over L and z = z_base * z_factor**r",
        description="Errors |I_L - I_Lref| for each L (rows) and r = 0..count-1 (columns). " + ADMISSIBLE,
    )
    p.add_argument("--f", required=True, help=f"builtin integrand name[:param], one of {names}")
    p.add_argument("--z-base", type=parse_complex, required=True, help="z for r = 0, as RE,IM")
    p.add_argument("--z-factor", type=float, default=4.0, help="ratio between successive z (default 4)")
    p.add_argument("--z-count", type=positive_int, default=6, help="number of z columns (default 6)")
    p.add_argument(
        "--L-list", type=parse_int_list, default=[10, 20, 40, 80, 160, 320, 640], help="comma separated L values"
    )
    p.add_argument("--L-ref", type=positive_int, default=1280, help="reference L (default 1280)")
    _common(p)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser(
        "instability",
        help="raw forward recurrence against the stable weights",
        description="|rho_n| from the unguarded forward recurrence and from the stable algorithm; "
        "overflowed entries print as inf. " + ADMISSIBLE,
    )
    p.add_argument("--z", type=parse_complex, required=True, help="exponent as RE,IM")
    p.add_argument("--L", type=positive_int, required=True, help="highest index")
    _common(p)
    p.set_defaults(func=cmd_instability)

    p = sub.add_parser(
        "demo-laplace",
        help="invert one fractional evolution mode on a hyperbola",
        description="Solves u' + lam_eig D^-alpha u = sin(t), u(0) = u0 by Laplace inversion with "
        "2N+1 contour nodes and an (L+1)-point inner rule. Times are in the same units as the "
        "forcing sin(t). Inner exponents (t/2) z_j must satisfy Re <= mu0 = 4.",
    )
    p.add_argument("--alpha", type=float, default=0.5, help="fractional order in (-1, 1); 0 gives the heat mode")
    p.add_argument("--lam-eig", type=float, default=1.0, help="positive eigenvalue of the mode")
    p.add_argument("--u0", type=float, default=1.0, help="initial value")
    p.add_argument("--T", type=float, required=True, help="time the contour is tuned for")
    p.add_argument("--t-list", type=parse_float_list, default=None, help="output times (default: T)")
    p.add_argument("--N", type=positive_int, default=36, help="contour half-width (2N+1 nodes)")
    p.add_argument("--L", type=positive_int, default=32, help="inner rule degree")
    p.add_argument(
        "--k-override", type=float, default=None, help="contour step; default sqrt(4 pi r / gamma) / sqrt(N)"
    )
    _common(p)
    p.set_defaults(func=cmd_demo_laplace)
    return parser


_NEGATIVE = re.compile(r"^-(\d|\.\d)")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--z -1,0`` as ``--z=-1,0`` so argparse does not read a flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _find_config(argv: list[str]) -> tuple[str | None, str | None]:
    """Locate the subcommand and the ``--config`` path without a full parse."""
    command = path = None
    for i, tok in enumerate(argv):
        if command is None and not tok.startswith("-"):
            command = tok
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    return command, path


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    command, path = _find_config(argv)
    subparsers = parser._subparsers._group_actions[0].choices
    if path is None or command not in subparsers:
        return parser.parse_args(argv)
    try:
        values = read_config(path)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    sub = subparsers[command]
    known = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in values.items():
        action = known.get(key)
        if action is None or key in ("config", "help", "func"):
            raise UsageError(f"unknown config key {key!r} for {command}")
        if action.nargs == 0:
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            try:
                defaults[key] = action.type(raw)
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
        else:
            defaults[key] = raw
        # a value from the file satisfies required=True
        action.required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except UsageError as exc:
        print(f"ccexp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    stream = None
    try:
        stream = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
        args.func(args, CsvWriter(stream))
    except UsageError as exc:
        print(f"ccexp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ccexp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, ValueError, FloatingPointError) as exc:
        print(f"ccexp {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        if stream is not None and stream is not sys.stdout:
            stream.close()
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
