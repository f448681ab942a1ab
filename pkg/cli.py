"""Command-line front end for nahmscan.

Subcommands: verify, profile, scan, factor, dilog, minpoly. Settings resolve
as command-line flag > config file (``--config``) > environment > default.
Exit codes: 0 success, 1 computational failure, 2 usage or validation error.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Any

import mpmath

from asymptotics.profile import build_profile, profile_record, solve_C
from asymptotics.residuals import modularity_residuals
from config import (
    CPRIME_DISPLAYED_RANGE,
    DEFAULT_DIGITS,
    DEFAULT_MAX_DEN,
    DEFAULT_ORDER,
    DEFAULT_P,
    LOG_LEVEL,
    MAX_P,
    PARTITION_CHECK_ORDER,
    SCREEN_DIGITS,
    load_config_file,
)
from numerics.precision import PrecisionContext, as_fraction
from numerics.recognize import rational_reconstruct
from qseries.nahm import expand_sum_side
from qseries.products import detect_period, euler_factorize, residue_support
from search.checks import DILOG_CHECKS, alpha_crosscheck, dilog_check, minimal_poly_check
from search.corpus import load_corpus, load_datum_file
from search.records import OUTPUT_DIGITS, records_to_csv, records_to_jsonl, write_output
from search.report import (
    render_alpha,
    render_dilog,
    render_factor,
    render_minpoly,
    render_profile,
    render_records,
    render_verification,
)
from search.scan import SearchSpec, alpha_rationality, scan
from search.verify import verify_identities
from utils.exceptions import ComputationError, ConfigurationError, DataLoadError, ValidationError
from utils.logging import get_logger, setup_logging

logger = get_logger(__name__)

FACTOR_ORDER = 60
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

FORMATS: dict[str, tuple[str, ...]] = {
    "verify": ("text", "jsonl"),
    "profile": ("text", "jsonl"),
    "scan": ("jsonl", "csv", "text"),
    "factor": ("text", "jsonl"),
    "dilog": ("text",),
    "minpoly": ("text",),
}


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved and validated run."""

    command: str
    identity: str | None = None
    family: str | None = None
    datum: Path | None = None
    corpus: Path | None = None
    B: tuple[Fraction, ...] | None = None
    C: Fraction = Fraction(0)
    order: int | None = None
    partition_order: int = PARTITION_CHECK_ORDER
    side: int = 0
    max_period: int | None = None
    digits: int = DEFAULT_DIGITS
    screen_digits: int = SCREEN_DIGITS
    P: int = DEFAULT_P
    tol: str | None = None
    max_den: int = DEFAULT_MAX_DEN
    terms: int = 1
    range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(6))
    step: Fraction = Fraction(1)
    cprime: tuple[int, int] = CPRIME_DISPLAYED_RANGE
    allow_wide_cprime: bool = False
    workers: int = 1
    passed_only: bool = False
    check: str = "all"
    target: str | None = None
    output: Path | None = None
    format: str | None = None

    def context(self) -> PrecisionContext:
        return PrecisionContext(self.digits)


def _fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(as_fraction(part) for part in text.split())


def _fraction_pair(text: str) -> tuple[Fraction, Fraction]:
    values = _fractions(text)
    if len(values) != 2:
        raise ValueError(f"expected two values, got {text!r}")
    return values


def _int_pair(text: str) -> tuple[int, int]:
    values = tuple(int(part) for part in text.split())
    if len(values) != 2:
        raise ValueError(f"expected two integers, got {text!r}")
    return values


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


# Parsers for config-file values, keyed by RunConfig field.
FILE_PARSERS: dict[str, Callable[[str], Any]] = {
    "identity": str,
    "family": str,
    "datum": Path,
    "corpus": Path,
    "B": _fractions,
    "C": as_fraction,
    "order": int,
    "partition_order": int,
    "side": int,
    "max_period": int,
    "digits": int,
    "screen_digits": int,
    "P": int,
    "tol": str,
    "max_den": int,
    "terms": int,
    "range": _fraction_pair,
    "step": as_fraction,
    "cprime": _int_pair,
    "allow_wide_cprime": _bool,
    "workers": int,
    "passed_only": _bool,
    "check": str,
    "target": str,
    "output": Path,
    "format": str,
}


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; every option defaults to None so that unset flags fall through."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", type=Path, default=None, help="Key-value file with default settings"
    )
    common.add_argument("--log-level", default=None, help=f"Logging level (default: {LOG_LEVEL})")
    common.add_argument(
        "--output", "-o", type=Path, default=None, help="Write the report here instead of stdout"
    )
    common.add_argument("--format", default=None, help="Output format")
    common.add_argument(
        "--digits", type=int, default=None, help=f"Working precision (default: {DEFAULT_DIGITS})"
    )

    parser = argparse.ArgumentParser(
        prog="nahmscan", description="Nahm sum identities and modularity searches"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="Compare sum sides with product sides")
    verify.add_argument("--identity", default=None, help="Identity name, or 'all'")
    verify.add_argument(
        "--order", type=int, default=None, help=f"Truncation order (default: {DEFAULT_ORDER})"
    )
    verify.add_argument(
        "--partition-order", type=int, default=None, help="Cap for the partition cross-check"
    )
    verify.add_argument(
        "--corpus", type=Path, default=None, help="Directory with families.json and identities.json"
    )

    profile = sub.add_parser("profile", parents=[common], help="Asymptotic profile of one sum")
    profile.add_argument("--family", default=None)
    profile.add_argument("--B", dest="B", nargs="+", type=_rational_arg, default=None)
    profile.add_argument("--C", dest="C", type=_rational_arg, default=None)
    profile.add_argument("--datum", type=Path, default=None, help="JSON datum file")
    profile.add_argument(
        "--P", dest="P", type=int, default=None, help=f"Expansion order (default: {DEFAULT_P})"
    )
    profile.add_argument("--tol", default=None, help="Residual tolerance (default: 10^-(digits/3))")
    profile.add_argument("--max-den", type=int, default=None)

    scan_parser = sub.add_parser("scan", parents=[common], help="Grid search over B and C'")
    scan_parser.add_argument("--family", default=None)
    scan_parser.add_argument("--terms", type=int, default=None)
    scan_parser.add_argument(
        "--range", nargs=2, type=_rational_arg, default=None, metavar=("LO", "HI")
    )
    scan_parser.add_argument("--step", type=_rational_arg, default=None)
    scan_parser.add_argument("--cprime", nargs=2, type=int, default=None, metavar=("LO", "HI"))
    scan_parser.add_argument("--allow-wide-cprime", action="store_true", default=None)
    scan_parser.add_argument("--P", dest="P", type=int, default=None)
    scan_parser.add_argument("--tol", default=None)
    scan_parser.add_argument("--screen-digits", type=int, default=None)
    scan_parser.add_argument("--max-den", type=int, default=None)
    scan_parser.add_argument("--workers", type=int, default=None)
    scan_parser.add_argument("--passed-only", action="store_true", default=None)

    factor = sub.add_parser("factor", parents=[common], help="Euler factorization of a sum side")
    factor.add_argument("--identity", default=None)
    factor.add_argument(
        "--side", type=int, default=None, help="Which sum side of the identity (default: 0)"
    )
    factor.add_argument("--datum", type=Path, default=None)
    factor.add_argument(
        "--order", type=int, default=None, help=f"Truncation order (default: {FACTOR_ORDER})"
    )
    factor.add_argument("--max-period", type=int, default=None)

    dilog = sub.add_parser("dilog", parents=[common], help="Dilogarithm identity residuals")
    dilog.add_argument("--check", default=None, help=f"One of {', '.join(DILOG_CHECKS)} or all")
    dilog.add_argument(
        "--target", default=None, help="Right-hand side to test instead of the known value"
    )

    sub.add_parser(
        "minpoly", parents=[common], help="Minimal polynomial and growth-exponent checks"
    )
    return parser


def _field_names() -> dict[str, str]:
    return {f.name.lower(): f.name for f in fields(RunConfig)}


def _from_file(path: Path) -> dict[str, Any]:
    names = _field_names()
    values = {}
    for key, raw in load_config_file(path).items():
        name = names.get(key)
        if name is None or name == "command":
            raise ConfigurationError(f"Unknown config key {key!r}", details=str(path))
        try:
            values[name] = FILE_PARSERS[name](raw)
        except (ValueError, ValidationError) as e:
            raise ConfigurationError(f"Bad value for {key!r}: {raw!r}", details=str(e)) from e
    return values


def _validate(config: RunConfig) -> RunConfig:
    """Reject every bad numeric or enumerated setting before any work starts."""
    allowed = FORMATS[config.command]
    if config.format is None:
        config = replace(config, format=allowed[0])
    elif config.format not in allowed:
        raise ValidationError(
            f"format for {config.command} must be one of {allowed}, got {config.format!r}"
        )
    if config.order is None:
        default_order = FACTOR_ORDER if config.command == "factor" else DEFAULT_ORDER
        config = replace(config, order=default_order)
    if config.order < 0:
        raise ValidationError(f"order must be >= 0, got {config.order}")
    if config.partition_order < 0:
        raise ValidationError(f"partition order must be >= 0, got {config.partition_order}")
    if config.side < 0:
        raise ValidationError(f"side must be >= 0, got {config.side}")
    if config.max_period is not None and config.max_period < 1:
        raise ValidationError(f"max period must be >= 1, got {config.max_period}")
    PrecisionContext(config.digits)
    PrecisionContext(config.screen_digits)
    if not 1 <= config.P <= MAX_P:
        raise ValidationError(f"P must be in [1, {MAX_P}], got {config.P}")
    if config.tol is not None:
        try:
            tol = mpmath.mpf(config.tol)
        except (ValueError, TypeError) as e:
            raise ValidationError(f"tol must be a number, got {config.tol!r}") from e
        if not tol > 0:
            raise ValidationError(f"tol must be positive, got {config.tol}")
    if config.max_den < 1:
        raise ValidationError(f"max denominator must be >= 1, got {config.max_den}")
    if config.workers < 1:
        raise ValidationError(f"workers must be >= 1, got {config.workers}")
    if config.command == "dilog" and config.check not in (*DILOG_CHECKS, "all"):
        raise ValidationError(
            f"check must be one of {(*DILOG_CHECKS, 'all')}, got {config.check!r}"
        )
    if config.target is not None and config.check == "all":
        raise ValidationError("--target needs a single --check")
    needs_family = config.family is None or config.B is None
    if config.command == "profile" and config.datum is None and needs_family:
        raise ValidationError("profile needs --datum or both --family and --B")
    if config.command == "scan" and config.family is None:
        raise ValidationError("scan needs --family")
    if config.command == "factor" and config.datum is None and config.identity is None:
        raise ValidationError("factor needs --identity or --datum")
    return config


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags, the optional config file and defaults into a validated RunConfig."""
    values: dict[str, Any] = {}
    if args.config is not None:
        values.update(_from_file(args.config))
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = tuple(flag) if isinstance(flag, list) else flag
    values["command"] = args.command
    return _validate(RunConfig(**values))


def _tolerance(config: RunConfig, ctx: PrecisionContext) -> mpmath.mpf:
    return ctx.real(config.tol) if config.tol is not None else ctx.residual_tolerance


def cmd_verify(config: RunConfig) -> int:
    corpus = load_corpus(config.corpus)
    if config.identity in (None, "all"):
        identities = list(corpus.identities.values())
    else:
        identities = [corpus.identity(config.identity)]
    report = verify_identities(identities, config.order, config.partition_order)
    if config.format == "jsonl":
        text = "".join(json.dumps(asdict(r)) + "\n" for r in report.identities)
    else:
        text = render_verification(report)
    write_output(text, config.output)
    return 0 if report.passed else 1


def cmd_profile(config: RunConfig) -> int:
    ctx = config.context()
    if config.datum is not None:
        data = load_datum_file(config.datum)
        if len(data) != 1:
            raise ValidationError(
                f"profile needs exactly one datum, {config.datum} holds {len(data)}"
            )
        datum = data[0]
    else:
        datum = load_corpus(config.corpus).family(config.family).datum(config.B, config.C)
    profile = build_profile(datum, config.P, ctx)
    tol = _tolerance(config, ctx)
    residuals = modularity_residuals([profile.term], config.P, ctx)
    C = solve_C(profile, ctx)
    C_exact = rational_reconstruct(C, config.max_den, ctx.residual_tolerance)
    alpha = alpha_rationality(profile.base, config.max_den)
    extras = {
        "C_solved": str(C_exact) if C_exact is not None else mpmath.nstr(C, OUTPUT_DIGITS),
        "alpha_over_pi2": str(alpha) if alpha is not None else None,
        "residuals": [mpmath.nstr(r, OUTPUT_DIGITS) for r in residuals.residuals()],
        "passed": residuals.passes(tol),
    }
    record = profile_record(profile, ctx)
    if config.format == "jsonl":
        text = json.dumps({**record, **extras}) + "\n"
    else:
        text = render_profile(record, extras)
    write_output(text, config.output)
    return 0


def cmd_scan(config: RunConfig) -> int:
    family = load_corpus(config.corpus).family(config.family)
    lo, hi = config.range
    screen = PrecisionContext(config.screen_digits)
    spec = SearchSpec.uniform(
        family,
        config.terms,
        lo,
        hi,
        config.step,
        cprime_range=config.cprime,
        P=config.P,
        tol=screen.real(config.tol) if config.tol is not None else None,
        screen_digits=config.screen_digits,
        confirm_digits=config.digits,
        max_den=config.max_den,
        allow_wide_cprime=config.allow_wide_cprime,
    )
    records = scan(spec, config.workers)
    if config.passed_only:
        records = [r for r in records if r.passed]
    if config.format == "csv":
        text = records_to_csv(records)
    elif config.format == "text":
        text = render_records(records)
    else:
        text = records_to_jsonl(records)
    write_output(text, config.output)
    return 0


def cmd_factor(config: RunConfig) -> int:
    if config.datum is not None:
        name = config.datum.name
        side = load_datum_file(config.datum)
    else:
        identity = load_corpus(config.corpus).identity(config.identity)
        if config.side >= len(identity.sum_sides):
            count = len(identity.sum_sides)
            raise ValidationError(
                f"{identity.name} has {count} sum side(s), asked for {config.side}"
            )
        name = identity.name
        side = identity.sum_sides[config.side]
    exponents = euler_factorize(expand_sum_side(side, config.order))
    max_period = config.max_period or max(1, len(exponents) // 3)
    period = detect_period(exponents, max_period)
    support = residue_support(exponents, period) if period else ()
    if config.format == "jsonl":
        payload = {
            "name": name,
            "exponents": list(exponents),
            "period": period,
            "support": [list(s) for s in support],
        }
        text = json.dumps(payload) + "\n"
    else:
        text = render_factor(name, exponents, period, support)
    write_output(text, config.output)
    return 0


def cmd_dilog(config: RunConfig) -> int:
    ctx = config.context()
    names = DILOG_CHECKS if config.check == "all" else (config.check,)
    target = ctx.real(config.target) if config.target is not None else None
    results = [(name, dilog_check(name, ctx, target)) for name in names]
    write_output(render_dilog(results, ctx.tolerance), config.output)
    return 0 if all(value < ctx.tolerance for _, value in results) else 1


def cmd_minpoly(config: RunConfig) -> int:
    ctx = config.context()
    report = minimal_poly_check(ctx)
    corpus = load_corpus(config.corpus)
    alphas = [alpha_crosscheck(family, ctx) for family in corpus.families.values()]
    write_output(render_minpoly(report) + "\n" + render_alpha(alphas), config.output)
    return 0 if report.passed and all(a.difference < ctx.tolerance for a in alphas) else 1


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "verify": cmd_verify,
    "profile": cmd_profile,
    "scan": cmd_scan,
    "factor": cmd_factor,
    "dilog": cmd_dilog,
    "minpoly": cmd_minpoly,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    log_level = (args.log_level or LOG_LEVEL).upper()
    if log_level not in LOG_LEVELS:
        print(f"error: log level must be one of {LOG_LEVELS}, got {log_level!r}", file=sys.stderr)
        return 2
    setup_logging(log_level=log_level)
    try:
        config = resolve_config(args)
        logger.info(f"Running {config.command}")
        return COMMANDS[config.command](config)
    except (ValidationError, ConfigurationError, DataLoadError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ComputationError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"computation failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
