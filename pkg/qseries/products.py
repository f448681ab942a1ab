"""Pochhammer products, Euler's factorization algorithm and period detection."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from qseries.series import QSeriesTrunc
from utils.exceptions import ValidationError
from utils.logging import get_logger

logger = get_logger(__name__)

ExponentSequence = tuple[int, ...]  # (e_1, ..., e_N): index 0 holds e_1


def _residue_pairs(raw: Sequence[Any]) -> tuple[tuple[int, int], ...]:
    pairs = []
    for item in raw:
        if isinstance(item, int):
            residue, mult = item, 1
        else:
            residue, mult = int(item[0]), int(item[1])
        pairs.append((residue, mult))
    return tuple(pairs)


@dataclass(frozen=True)
class ProductSpec:
    """Quotient of Pochhammer families modulo ``modulus``.

    The expansion is prod_r (q^r; q^M)^mult over ``numerator`` divided by the
    same over ``denominator``, times the expansion of ``extra`` (a second
    family with its own modulus, for products like (q; q^2)).
    """

    modulus: int
    numerator: tuple[tuple[int, int], ...] = ()
    denominator: tuple[tuple[int, int], ...] = ()
    extra: "ProductSpec | None" = None

    def __post_init__(self) -> None:
        """Validate residues and multiplicities."""
        if self.modulus < 1:
            raise ValidationError(f"product modulus must be >= 1, got {self.modulus}")
        for side in (self.numerator, self.denominator):
            for residue, mult in side:
                if not 1 <= residue <= self.modulus:
                    raise ValidationError(
                        f"residue {residue} outside [1, {self.modulus}]"
                    )
                if mult < 1:
                    raise ValidationError(f"multiplicity must be positive, got {mult}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ProductSpec":
        """Parse ``{modulus, numerator, denominator, extra}`` (residues as ints or [r, mult])."""
        try:
            extra = data.get("extra")
            return cls(
                modulus=int(data["modulus"]),
                numerator=_residue_pairs(data.get("numerator", [])),
                denominator=_residue_pairs(data.get("denominator", [])),
                extra=cls.from_dict(extra) if extra else None,
            )
        except (KeyError, TypeError, IndexError) as e:
            raise ValidationError(f"Malformed product spec: {data!r}") from e

    def label(self) -> str:
        """Render as (q^a,q^b;q^M) quotient text."""

        def family(pairs: tuple[tuple[int, int], ...]) -> str:
            inner = ",".join(
                f"q^{r}" + (f"^{m}" if m > 1 else "") for r, m in pairs
            )
            return f"({inner};q^{self.modulus})"

        top = family(self.numerator) if self.numerator else "1"
        text = top if not self.denominator else f"{top}/{family(self.denominator)}"
        if self.extra is not None:
            text = f"{text} * {self.extra.label()}"
        return text


def pochhammer_inv(spec: ProductSpec, order: int) -> QSeriesTrunc:
    """Expand a ProductSpec to order N by multiplying/dividing (1 - q^(r + tM)) factors."""
    series = QSeriesTrunc.one(order)
    for side, exponent in ((spec.numerator, 1), (spec.denominator, -1)):
        for residue, mult in side:
            for power in range(residue, order + 1, spec.modulus):
                series = series.times_one_minus_power(power, exponent * mult)
    if spec.extra is not None:
        series = series * pochhammer_inv(spec.extra, order)
    return series


def product_from_exponents(exponents: Sequence[int], order: int) -> QSeriesTrunc:
    """Expand prod_n (1 - q^n)^(-e_n) to order N (exponents[0] is e_1)."""
    series = QSeriesTrunc.one(order)
    for n, e in enumerate(exponents[:order], start=1):
        if e:
            series = series.times_one_minus_power(n, -e)
    return series


def euler_factorize(f: QSeriesTrunc) -> ExponentSequence:
    """Exponents e_1..e_N with f = prod (1 - q^n)^(-e_n) mod q^(N+1).

    Each step reads e_n off the current q^n coefficient and clears it by
    multiplying with (1 - q^n)^(e_n).
    """
    g = f.normalized()
    if g.coeffs[0] != 1:
        raise ValidationError(f"Euler factorization needs a_0 = 1, got a_0 = {g.coeffs[0]}")
    exponents = []
    for n in range(1, g.order + 1):
        e = g.coeffs[n]
        exponents.append(e)
        if e:
            g = g.times_one_minus_power(n, e)
    return tuple(exponents)


def detect_period(exponents: Sequence[int], max_period: int) -> int | None:
    """Smallest M <= max_period with e_n = e_{n+M} over the whole sequence, else None."""
    if max_period < 1:
        raise ValidationError(f"max_period must be >= 1, got {max_period}")
    if len(exponents) < 3 * max_period:
        raise ValidationError(
            f"sequence of length {len(exponents)} too short for max_period {max_period}",
            details="need at least 3 * max_period terms",
        )
    for period in range(1, max_period + 1):
        if all(exponents[i] == exponents[i + period] for i in range(len(exponents) - period)):
            logger.debug(f"Detected period {period} over {len(exponents)} exponents")
            return period
    return None


def residue_support(exponents: Sequence[int], period: int) -> tuple[tuple[int, int], ...]:
    """Nonzero (residue, exponent) pairs of a periodic sequence, residues in [1, period]."""
    return tuple(
        (r, exponents[r - 1])
        for r in range(1, min(period, len(exponents)) + 1)
        if exponents[r - 1]
    )
