"""Search result records and their JSONL / CSV encodings."""

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import mpmath
import pandas as pd
from mpmath import mpf

from utils.exceptions import DataLoadError
from utils.logging import get_logger, log_exception

logger = get_logger(__name__)

RECORD_COLUMNS = [
    "family",
    "terms",
    "residuals",
    "Cstar",
    "lambda",
    "alpha_over_pi2",
    "degenerate",
    "passed",
]

# Decimal digits written for residuals, C* and lambda.
OUTPUT_DIGITS = 30


@dataclass(frozen=True, order=True)
class TermChoice:
    """One summand of a candidate: its linear term B and its extra shift C'."""

    B: tuple[Fraction, ...]
    cprime: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {"B": [str(b) for b in self.B], "Cprime": self.cprime}

    def label(self) -> str:
        return "(" + ",".join(str(b) for b in self.B) + (f";{self.cprime})" if self.cprime else ")")


def canonical_terms(terms: Sequence[TermChoice]) -> tuple[TermChoice, ...]:
    """Terms sorted lexicographically with the smallest shift moved to 0.

    A common shift is absorbed by q^C.
    """
    base = min(t.cprime for t in terms)
    return tuple(sorted(TermChoice(t.B, t.cprime - base) for t in terms))


@dataclass(frozen=True)
class CandidateRecord:
    """One grid point of a scan."""

    family: str
    terms: tuple[TermChoice, ...]
    residuals: tuple[mpf, ...]
    cstar: mpf
    lam: mpf
    alpha_over_pi2: Fraction | None
    degenerate: bool
    passed: bool

    @property
    def canonical_key(self) -> tuple[TermChoice, ...]:
        return canonical_terms(self.terms)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready mapping with exactly the record columns."""
        alpha = self.alpha_over_pi2
        return {
            "family": self.family,
            "terms": [t.to_dict() for t in self.terms],
            "residuals": [mpmath.nstr(r, OUTPUT_DIGITS) for r in self.residuals],
            "Cstar": mpmath.nstr(self.cstar, OUTPUT_DIGITS),
            "lambda": mpmath.nstr(self.lam, OUTPUT_DIGITS),
            "alpha_over_pi2": (
                None if alpha is None else {"num": alpha.numerator, "den": alpha.denominator}
            ),
            "degenerate": self.degenerate,
            "passed": self.passed,
        }


def records_to_jsonl(records: Iterable[CandidateRecord]) -> str:
    return "".join(json.dumps(r.to_dict(), sort_keys=False) + "\n" for r in records)


def records_to_frame(records: Iterable[CandidateRecord]) -> pd.DataFrame:
    """One row per record; nested fields JSON-encoded."""
    rows = []
    for record in records:
        row = record.to_dict()
        for key in ("terms", "residuals", "alpha_over_pi2"):
            row[key] = json.dumps(row[key])
        rows.append(row)
    return pd.DataFrame(rows, columns=RECORD_COLUMNS)


def records_to_csv(records: Iterable[CandidateRecord]) -> str:
    return records_to_frame(records).to_csv(index=False, lineterminator="\n")


def write_output(text: str, path: Path | None) -> None:
    """Write to ``path`` or stdout."""
    if path is None:
        print(text, end="")
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        log_exception(logger, e, f"writing output to {path}")
        raise DataLoadError(f"Cannot write output file {path}") from e
    logger.info(f"Wrote {path}")
