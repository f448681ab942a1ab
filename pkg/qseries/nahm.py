"""Exact expansion of Nahm-type sums to a truncation order."""

from collections import defaultdict
from collections.abc import Sequence
from fractions import Fraction

from asymptotics.datum import NahmDatum
from qseries.series import QSeriesTrunc, sum_series
from utils.exceptions import ValidationError
from utils.logging import get_logger

logger = get_logger(__name__)


class InversePochhammerTable:
    """Lazily extended 1/(q^J; q^J)_n expansions, shared across the terms of one sum side."""

    def __init__(self, order: int):
        self.order = order
        self._rows: dict[int, list[QSeriesTrunc]] = {}

    def get(self, J: int, n: int) -> QSeriesTrunc:
        """1/(q^J; q^J)_n to the table order."""
        row = self._rows.setdefault(J, [QSeriesTrunc.one(self.order)])
        while len(row) <= n:
            t = len(row)
            if J * t > self.order:
                row.append(row[-1])
            else:
                row.append(row[-1].times_one_minus_power(J * t, -1))
        return row[n]


def integer_exponent(value: Fraction, n: tuple[int, ...]) -> int:
    """Exponent of the term at n as an int, rejecting fractional or negative values."""
    if value.denominator != 1:
        raise ValidationError(
            f"term n={n} has non-integral exponent {value}",
            details="series expansion needs integral exponents; rational C is asymptotic-only",
        )
    if value < 0:
        raise ValidationError(f"term n={n} has negative exponent {value}")
    return int(value)


def nahm_expand(
    datum: NahmDatum, order: int, table: InversePochhammerTable | None = None
) -> QSeriesTrunc:
    """Expand one Nahm-type sum to order N.

    Terms are grouped by their trailing coordinates: each group sums the
    shifted first-axis denominators, then multiplies once by the remaining
    inverse Pochhammer factors.
    """
    datum.require_positive_definite()
    if order < 0:
        raise ValidationError(f"truncation order must be >= 0, got {order}")
    if datum.C.denominator != 1:
        raise ValidationError(f"series expansion needs an integral C, got {datum.C}")
    table = table or InversePochhammerTable(order)

    groups: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
    count = 0
    for n, exponent in datum.lattice_points(order):
        groups[n[1:]].append((n[0], integer_exponent(exponent, n)))
        count += 1

    pieces = []
    for tail, heads in groups.items():
        inner = sum_series(
            (table.get(datum.J[0], n0).shift(e) for n0, e in heads), order
        )
        for J_i, n_i in zip(datum.J[1:], tail, strict=True):
            if n_i:
                inner = inner * table.get(J_i, n_i)
        pieces.append(inner)

    logger.debug(f"Expanded datum B={datum.B} C={datum.C}: {count} lattice points to order {order}")
    return sum_series(pieces, order)


def expand_sum_side(data: Sequence[NahmDatum], order: int) -> QSeriesTrunc:
    """Termwise sum of several Nahm-type sums (a multi-term sum side)."""
    if not data:
        raise ValidationError("a sum side needs at least one datum")
    table = InversePochhammerTable(order)
    return sum_series((nahm_expand(d, order, table) for d in data), order)
