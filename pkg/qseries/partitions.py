"""Brute-force generating functions of partitions with difference conditions.

These are the combinatorial sides of the identities, counted independently of
any analytic sum so they can serve as an oracle.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cache

from config import MAX_ENUMERATION_ORDER
from qseries.series import QSeriesTrunc
from utils.exceptions import ValidationError
from utils.logging import get_logger

logger = get_logger(__name__)


def _capparelli_pair(a: int, b: int) -> bool:
    # gap >= 4, or gap 2 or 3 with both parts multiples of 3 or a sum divisible by 6
    gap = b - a
    return gap >= 4 or (gap >= 2 and (a + b) % 6 == 0) or (gap == 3 and a % 3 == 0)


def _residue_pair(i: int) -> Callable[[int, int], bool]:
    def ok(a: int, b: int) -> bool:
        return b - a >= 2 or (a + b) % 3 == i

    return ok


@dataclass(frozen=True)
class PartitionCondition:
    """A difference condition on weakly increasing parts."""

    name: str
    adjacent_ok: Callable[[int, int], bool]
    min_part: int = 1
    forbidden_parts: frozenset[int] = field(default_factory=frozenset)
    forbidden_pairs: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    second_gap: int | None = None  # lambda_{j+2} - lambda_j lower bound


CONDITIONS: dict[str, PartitionCondition] = {
    "cap-1": PartitionCondition("cap-1", _capparelli_pair, forbidden_parts=frozenset({1})),
    "cap-2": PartitionCondition("cap-2", _capparelli_pair, forbidden_parts=frozenset({2})),
    "kr-1": PartitionCondition("kr-1", _residue_pair(0), second_gap=3),
    "kr-2": PartitionCondition("kr-2", _residue_pair(0), min_part=2, second_gap=3),
    "kr-3": PartitionCondition("kr-3", _residue_pair(0), min_part=3, second_gap=3),
    "kr-4": PartitionCondition("kr-4", _residue_pair(2), min_part=2, second_gap=3),
    "kr-5": PartitionCondition(
        "kr-5", _residue_pair(1), forbidden_pairs=frozenset({(2, 2)}), second_gap=3
    ),
}


def enumerate_condition_partitions(kind: str, n_max: int) -> QSeriesTrunc:
    """Generating function of partitions satisfying condition ``kind``, to q^n_max.

    Parts are placed in increasing order; the state is the remaining weight
    and the last two parts placed.
    """
    condition = CONDITIONS.get(kind)
    if condition is None:
        raise ValidationError(
            f"Unknown partition condition: {kind}", details=f"known: {sorted(CONDITIONS)}"
        )
    if not 0 <= n_max <= MAX_ENUMERATION_ORDER:
        raise ValidationError(f"n_max must be in [0, {MAX_ENUMERATION_ORDER}], got {n_max}")

    @cache
    def count(remaining: int, before: int, last: int) -> int:
        total = 1 if remaining == 0 else 0
        for part in range(max(last, condition.min_part), remaining + 1):
            if part in condition.forbidden_parts:
                continue
            if last:
                if not condition.adjacent_ok(last, part):
                    continue
                if (last, part) in condition.forbidden_pairs:
                    continue
                gap = condition.second_gap
                if before and gap is not None and part - before < gap:
                    continue
            total += count(remaining - part, last, part)
        return total

    coeffs = tuple(count(n, 0, 0) for n in range(n_max + 1))
    logger.debug(f"Enumerated {kind} partitions to n={n_max}: {count.cache_info().currsize} states")
    return QSeriesTrunc(coeffs)
