"""Plain-text reports for the command-line front end."""

from collections.abc import Iterable, Mapping, Sequence
from typing import Any

import mpmath
from tabulate import tabulate

from search.checks import AlphaCrosscheck, MinimalPolyReport
from search.records import OUTPUT_DIGITS, CandidateRecord
from search.verify import VerificationReport

TABLE_FORMAT = "simple"


def _status(passed: bool) -> str:
    return "ok" if passed else "FAIL"


def render_verification(report: VerificationReport) -> str:
    rows = []
    for r in report.identities:
        sides = ", ".join("ok" if s.passed else f"q^{s.mismatch}" for s in r.sides)
        if r.partition is None:
            partition = "-"
        elif r.partition.passed:
            partition = f"{r.partition.condition} ok to q^{r.partition.order}"
        else:
            partition = f"{r.partition.condition} differs at q^{r.partition.mismatch}"
        rows.append([r.name, r.product, sides, partition, _status(r.passed)])
    headers = ["identity", "product", "sum sides", "partitions", "status"]
    table = tabulate(rows, headers=headers, tablefmt=TABLE_FORMAT)
    passed = sum(r.passed for r in report.identities)
    return f"{table}\n\n{passed}/{len(report.identities)} identities agree to q^{report.order}\n"


def render_profile(record: Mapping[str, Any], extras: Mapping[str, Any]) -> str:
    """Key/value table of a profile record followed by the derived quantities."""
    rows = []
    for key, value in {**record, **extras}.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            value = "; ".join(", ".join(row) for row in value)
        elif isinstance(value, list | tuple):
            value = ", ".join(str(v) for v in value)
        rows.append([key, value])
    return tabulate(rows, tablefmt="plain") + "\n"


def render_records(records: Iterable[CandidateRecord]) -> str:
    rows = []
    for record in records:
        alpha = record.alpha_over_pi2
        rows.append(
            [
                " + ".join(t.label() for t in record.terms),
                mpmath.nstr(record.cstar, 12),
                ", ".join(mpmath.nstr(r, 5) for r in record.residuals),
                "-" if alpha is None else str(alpha),
                "yes" if record.degenerate else "",
                _status(record.passed),
            ]
        )
    headers = ["terms", "C*", "residuals", "alpha/pi^2", "degenerate", "status"]
    return tabulate(rows, headers=headers, tablefmt=TABLE_FORMAT) + "\n"


def render_factor(
    name: str, exponents: Sequence[int], period: int | None, support: Sequence[tuple[int, int]]
) -> str:
    lines = [f"{name}: f = prod (1 - q^n)^(-e_n)", ""]
    rows = [[n, e] for n, e in enumerate(exponents, start=1) if e]
    lines.append(tabulate(rows, headers=["n", "e_n"], tablefmt=TABLE_FORMAT))
    lines.append("")
    if period is None:
        lines.append("no period detected")
    else:
        residues = ", ".join(str(r) if e == 1 else f"{r}^{e}" for r, e in support)
        lines.append(f"period {period}, support {{{residues}}}")
    return "\n".join(lines) + "\n"


def render_minpoly(report: MinimalPolyReport) -> str:
    rows = [
        [r.family, r.label, mpmath.nstr(abs(r.value), 5), _status(abs(r.value) < report.tolerance)]
        for r in report.residuals
    ]
    headers = ["family", "relation", "|residual|", "status"]
    table = tabulate(rows, headers=headers, tablefmt=TABLE_FORMAT)
    return f"{table}\n\ntolerance {mpmath.nstr(report.tolerance, 3)}\n"


def render_dilog(results: Sequence[tuple[str, Any]], tolerance: Any) -> str:
    rows = [[name, mpmath.nstr(value, 5), _status(value < tolerance)] for name, value in results]
    table = tabulate(rows, headers=["check", "|residual|", "status"], tablefmt=TABLE_FORMAT)
    return f"{table}\n\ntolerance {mpmath.nstr(tolerance, 3)}\n"


def render_alpha(checks: Sequence[AlphaCrosscheck]) -> str:
    rows = [
        [
            c.family,
            mpmath.nstr(c.nahm_alpha, OUTPUT_DIGITS),
            mpmath.nstr(c.product_alpha, OUTPUT_DIGITS),
            mpmath.nstr(c.difference, 5),
        ]
        for c in checks
    ]
    headers = ["family", "sum alpha", "product alpha", "|difference|"]
    return tabulate(rows, headers=headers, tablefmt=TABLE_FORMAT) + "\n"
