"""CLI for regularized products, Dirichlet series and identity verification."""

import argparse
import logging
import sys
from pathlib import Path

from .config import load_env_files, load_settings
from .dirichlet_series import sum_digamma, sum_direct
from .errors import CapacityError, ConfigError, DomainError, ZetaRegError
from .hurwitz_lerch import lerch_L
from .regularized_products import (
    MonicPoly,
    power_form_closed_form,
    regprod_poly,
    regprod_power_form,
    regprod_power_form_oracle,
)
from .verification import SUITES, format_complex, render_csv, render_json, run_suite, summarize

EXIT_FAILURE = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

POWER_KEYS = ("m", "eps", "x", "y")


class ZetaregArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with EXIT_USAGE on bad arguments."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """Parse '1.5', '-2', '0.5+1i' or '0.5+1j'."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_poly(text: str) -> list[complex]:
    """Comma-separated coefficients, leading first."""
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def parse_power(text: str) -> dict:
    """m=..,eps=..,x=..,y=..[,root=..]"""
    fields = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected key=value, got {part!r}")
        fields[key.strip()] = value.strip()
    missing = [key for key in POWER_KEYS if key not in fields]
    if missing:
        raise argparse.ArgumentTypeError(f"missing {', '.join(missing)} in --power")
    unknown = set(fields) - set(POWER_KEYS) - {"root"}
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown --power keys: {', '.join(sorted(unknown))}")
    try:
        return {
            "m": int(fields["m"]),
            "eps": int(fields["eps"]),
            "x": parse_complex(fields["x"]),
            "y": parse_complex(fields["y"]),
            "root": int(fields.get("root", 0)),
        }
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid --power value: {exc}") from None


def _print_product(label: str, product) -> None:
    print(
        f"{format_complex(product.value)}\tmethod={product.method.value}"
        f"\terror={product.error_estimate:.3g}\t{label}"
    )


def cmd_lerch(args, settings):
    """Print L(x) = exp(-∂ζ_H/∂s(0, x))."""
    result = lerch_L(args.x, settings.config)
    print(f"{format_complex(result.value)}\tmethod=lerch\tshift_count={result.shift_count}")
    return 0


def cmd_regprod(args, settings):
    """Print a regularized product ⧉∏_{k>=start} Q(k)."""
    if args.poly is not None:
        q = MonicPoly.from_coefficients(args.poly)
        _print_product("poly", regprod_poly(q, args.start))
        if args.oracle:
            print("Warning: no Mellin oracle for --poly; use --power.", file=sys.stderr)
        return 0

    p = args.power
    product = regprod_power_form(
        p["x"], p["y"], p["m"], p["eps"], p["root"], args.start, settings.config
    )
    _print_product("power", product)
    closed = power_form_closed_form(p["x"], p["y"], p["m"], p["eps"], args.start)
    if closed is not None:
        _print_product("closed_form", closed)
    if args.oracle:
        real_input = p["x"].imag == 0 and p["y"].imag == 0
        try:
            if not real_input:
                raise DomainError("the Mellin oracle needs real x and y")
            oracle = regprod_power_form_oracle(
                p["x"].real, p["y"].real, p["m"], p["eps"], args.start, settings.config
            )
        except DomainError as exc:
            print(f"Warning: Mellin oracle unavailable: {exc}", file=sys.stderr)
        else:
            _print_product("oracle", oracle)
    return 0


def cmd_series(args, settings):
    """Print Σ_{k>=1} 1/((k+x)^m + y) by one or both methods."""
    rows = []
    if args.method in ("direct", "both"):
        rows.append(sum_direct(args.m, args.x, args.y, settings.series))
    if args.method in ("digamma", "both"):
        rows.append(sum_digamma(args.m, args.x, args.y, settings.convention))
    for row in rows:
        print(f"{format_complex(row.value)}\tmethod={row.method.value}\terror={row.tail_bound:.3g}")
    if len(rows) == 2:
        print(f"{abs(rows[0].value - rows[1].value):.3g}\tmethod=residual")
    return 0


def cmd_verify(args, settings):
    """Run identity suites; exit 1 if any row fails."""
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = run_suite(names, args.grid, settings)
    render = render_json if args.out == "json" else render_csv
    sys.stdout.write(render(reports))
    print(summarize(reports), file=sys.stderr)
    return 0 if all(r.passed for r in reports) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = ZetaregArgumentParser(
        prog="zetareg",
        description="Zeta-regularized products, Dirichlet series and their identities",
    )
    parser.add_argument("--config", type=Path, help="Key=value config file")
    parser.add_argument("--quad-tol", type=float, help="Quadrature tolerance (overrides ZETAREG_QUAD_TOL)")
    parser.add_argument("--workers", type=int, help="Threads for verify (overrides ZETAREG_WORKERS)")
    parser.add_argument(
        "--paper-signs",
        action="store_true",
        default=False,
        help="Use formulas exactly as printed instead of the numerically validated versions",
    )
    parser.add_argument("-v", "--verbose", action="store_true", default=False, help="Debug logging")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # --- lerch ---
    p_lerch = subparsers.add_parser("lerch", help="Evaluate L(x), the product of n + x")
    p_lerch.add_argument("x", type=parse_complex, help="Argument, e.g. 0.5 or 1+2i")

    # --- regprod ---
    p_regprod = subparsers.add_parser("regprod", help="Regularized product of a polynomial sequence")
    source = p_regprod.add_mutually_exclusive_group(required=True)
    source.add_argument("--poly", type=parse_poly, help="Monic coefficients, leading first: 1,3,2")
    source.add_argument("--power", type=parse_power, help="(k+x)^m - eps*y^m: m=2,eps=-1,x=0,y=1[,root=0]")
    p_regprod.add_argument("--start", type=int, choices=[0, 1], default=0, help="First index k (default: 0)")
    p_regprod.add_argument(
        "--oracle",
        action="store_true",
        default=False,
        help="Also print the Mellin-transform value when available",
    )

    # --- series ---
    p_series = subparsers.add_parser("series", help="Sum 1/((k+x)^m + y) over k >= 1")
    p_series.add_argument("m", type=int, help="Power m >= 2")
    p_series.add_argument("x", type=parse_complex, help="Shift x, Re(x) > -1")
    p_series.add_argument("y", type=parse_complex, help="Offset y")
    p_series.add_argument(
        "--method",
        choices=["direct", "digamma", "both"],
        default="both",
        help="Summation method (default: both)",
    )

    # --- verify ---
    p_verify = subparsers.add_parser("verify", help="Run identity verification suites")
    p_verify.add_argument("--suite", choices=["all", *SUITES], default="all")
    p_verify.add_argument("--out", choices=["json", "csv"], default="json")
    p_verify.add_argument("--grid", choices=["fast", "dense"], default="fast")

    return parser


def main():
    parser = build_parser()
    args = parser.parse_args()

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    if not args.command:
        parser.print_help(sys.stderr)
        sys.exit(EXIT_USAGE)

    load_env_files()
    try:
        settings = load_settings(
            args.config,
            quad_tol=args.quad_tol,
            workers=args.workers,
            paper_signs=args.paper_signs,
        )
    except ConfigError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(EXIT_USAGE)

    dispatch = {
        "lerch": cmd_lerch,
        "regprod": cmd_regprod,
        "series": cmd_series,
        "verify": cmd_verify,
    }
    try:
        code = dispatch[args.command](args, settings)
    except (DomainError, CapacityError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(EXIT_DOMAIN)
    except ZetaRegError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        sys.exit(EXIT_FAILURE)
    if code:
        sys.exit(code)


if __name__ == "__main__":
    main()
