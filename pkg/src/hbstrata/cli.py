"""Command-line front end: ``hbstrata {types,components,count,verify}``.

Exit status is 0 on success, 1 when a verification suite fails or two
formulas disagree, and 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import alpha, counting, quadratic, reporting, strata
from .alpha import RamificationProfile
from .errors import HBStrataError, InconsistentCounts
from .verify import SUITES, VerifyConfig, run_verification

ENV_MAX_G = "HBSTRATA_MAX_G"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_FILTER_NAMES = {"all": "all", "generic": "generic", "generic-ss": "generic_supersingular"}


class UsageError(Exception):
    pass


def _env_cap() -> Optional[int]:
    raw = os.environ.get(ENV_MAX_G)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{ENV_MAX_G} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{ENV_MAX_G} must be positive, got {value}")
    return value


def effective_max_g(requested: Optional[int], default: int) -> int:
    """The flag value (or default), capped by the environment variable."""
    value = default if requested is None else requested
    cap = _env_cap()
    return value if cap is None else min(value, cap)


def parse_tau(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise UsageError(f"bad --tau {text!r}; expected comma-separated positions") from None


def parse_fields(text: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"3^2,2^3,5"`` into ((3, 2), (2, 3), (5, 1))."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        base, _, exp = part.partition("^")
        try:
            out.append((int(base), int(exp) if exp else 1))
        except ValueError:
            raise UsageError(f"bad field {part!r}; expected p^m") from None
        if not quadratic.is_prime(out[-1][0]) or out[-1][1] < 1:
            raise UsageError(f"bad field {part!r}; p must be prime and m positive")
    if not out:
        raise UsageError("--fields is empty")
    return tuple(out)


def _resolve_profile(args) -> RamificationProfile:
    if args.profile is not None and args.disc is not None:
        raise UsageError("give either --profile or --disc, not both")
    if args.profile is not None:
        return RamificationProfile.parse(args.profile)
    if args.disc is not None:
        if args.p is None:
            raise UsageError("--disc needs --p")
        return quadratic.profile_of(args.disc, args.p)
    raise UsageError("a profile is required: --profile F1,F2,... or --disc D --p P")


def cmd_types(args) -> reporting.TypesReport:
    profile = _resolve_profile(args)
    max_g = effective_max_g(args.max_g, alpha.DEFAULT_MAX_G)
    return reporting.types_report(profile, _FILTER_NAMES[args.filter], max_g)


def cmd_components(args) -> reporting.ComponentsReport:
    if args.g is None:
        raise UsageError("components needs --g")
    tau = parse_tau(args.tau)
    max_g = effective_max_g(args.max_g, strata.DEFAULT_MAX_G)
    return reporting.components_report(args.g, tau, max_g)


def cmd_count(args) -> counting.CountReport:
    profile = _resolve_profile(args)
    if args.p is not None and not quadratic.is_prime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    if args.class_factor is not None:
        H = quadratic.class_factor(args.disc, args.n, override=_parse_rational(args.class_factor))
    elif args.disc is not None and args.n is not None:
        H = quadratic.class_factor(args.disc, args.n)
    elif counting.needs_class_factor(profile) or (args.p is not None and profile.is_inert):
        raise UsageError(f"profile {profile} needs a class factor: give --class-factor, or --disc with --n")
    else:
        H = None
    return counting.build_count_report(profile, H, p=args.p, n=args.n)


def _parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --class-factor {text!r}; expected an integer or a/b") from None
    if value <= 0:
        raise UsageError("--class-factor must be positive")
    return value


def cmd_verify(args):
    max_g = effective_max_g(args.max_g, VerifyConfig.max_g)
    kwargs = {"max_g": max_g, "seed": args.seed, "engine": args.engine}
    if args.fields is not None:
        kwargs["fields"] = parse_fields(args.fields)
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.h_samples is not None:
        kwargs["h_samples"] = args.h_samples
    config = VerifyConfig(**kwargs)
    return run_verification(config, args.suite)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hbstrata",
        description="Stratification combinatorics and component counts for Hilbert-Blumenthal "
                    "moduli with Iwahori level at p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--output", "-o", help="write the report to this file instead of stdout")

    def field_data(p: argparse.ArgumentParser) -> None:
        p.add_argument("--profile", help="residue degrees, e.g. 4 or 2,2")
        p.add_argument("--disc", type=int, help="fundamental discriminant D of a real quadratic field")
        p.add_argument("--p", type=int, help="the prime p")

    t = sub.add_parser("types", help="list alpha types with their invariants")
    field_data(t)
    t.add_argument("--filter", choices=tuple(_FILTER_NAMES), default="all")
    t.add_argument("--max-g", type=int, help=f"enumeration bound (default {alpha.DEFAULT_MAX_G})")
    common(t)

    c = sub.add_parser("components", help="irreducible components of X_tau")
    c.add_argument("--g", type=int)
    c.add_argument("--tau", default="", help="comma-separated support positions, e.g. 0,2")
    c.add_argument("--max-g", type=int, help=f"enumeration bound (default {strata.DEFAULT_MAX_G})")
    common(c)

    n = sub.add_parser("count", help="global component counts")
    field_data(n)
    n.add_argument("--n", type=int, help="level n used to compute H from D")
    n.add_argument("--class-factor", help="override H (integer or a/b)")
    common(n)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--max-g", type=int, help=f"depth (default {VerifyConfig.max_g})")
    v.add_argument("--fields", help="finite fields as p^m, comma-separated")
    v.add_argument("--samples", type=int, help="random points per (g, tau, field)")
    v.add_argument("--h-samples", type=int, help="random class factors per profile")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--engine", choices=("batch", "scalar"), default="batch")
    v.add_argument("--suite", action="append", choices=tuple(SUITES),
                   help="run only this suite (repeatable)")
    common(v)
    return parser


COMMANDS = {"types": cmd_types, "components": cmd_components, "count": cmd_count, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
        text = reporting.render(report, args.format)
    except InconsistentCounts as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, HBStrataError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not report.passed:
        return EXIT_FAILED
    return EXIT_OK
