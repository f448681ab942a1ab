"""Coefficient-level verification of the identity corpus."""

from collections.abc import Iterable
from dataclasses import dataclass, field

from config import DEFAULT_ORDER, PARTITION_CHECK_ORDER
from qseries.nahm import expand_sum_side
from qseries.partitions import enumerate_condition_partitions
from qseries.products import pochhammer_inv
from search.corpus import Identity
from utils.exceptions import ValidationError
from utils.logging import LoggerMixin, log_duration


@dataclass(frozen=True)
class SideCheck:
    """One sum side compared with the product side."""

    index: int
    terms: int
    mismatch: int | None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


@dataclass(frozen=True)
class PartitionCheck:
    """The first sum side compared with the partition-counting oracle."""

    condition: str
    order: int
    mismatch: int | None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


@dataclass(frozen=True)
class IdentityReport:
    name: str
    order: int
    product: str
    sides: tuple[SideCheck, ...]
    partition: PartitionCheck | None = None

    @property
    def passed(self) -> bool:
        partition_ok = self.partition is None or self.partition.passed
        return partition_ok and all(s.passed for s in self.sides)


@dataclass(frozen=True)
class VerificationReport:
    order: int
    identities: tuple[IdentityReport, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.identities)

    def failures(self) -> list[IdentityReport]:
        return [r for r in self.identities if not r.passed]


class IdentityVerifier(LoggerMixin):
    """Expands every sum side and the product side of an identity and compares them."""

    def __init__(self, order: int = DEFAULT_ORDER, partition_order: int = PARTITION_CHECK_ORDER):
        """Initialize the verifier.

        Args:
            order: Truncation order N of the series comparison
            partition_order: Cap on the order of the partition-oracle comparison

        """
        if not isinstance(order, int) or order < 0:
            raise ValidationError(f"order must be a nonnegative integer, got {order!r}")
        if partition_order < 0:
            raise ValidationError(f"partition order must be >= 0, got {partition_order}")
        self.order = order
        self.partition_order = partition_order

    def verify(self, identity: Identity) -> IdentityReport:
        product = pochhammer_inv(identity.product, self.order)
        sides = []
        first = None
        for index, side in enumerate(identity.sum_sides):
            series = expand_sum_side(side, self.order)
            if first is None:
                first = series
            mismatch = series.first_mismatch(product, self.order)
            if mismatch is not None:
                self.logger.warning(
                    f"{identity.name}: sum side {index} differs from the product at q^{mismatch} "
                    f"({series[mismatch]} vs {product[mismatch]})"
                )
            sides.append(SideCheck(index=index, terms=len(side), mismatch=mismatch))

        partition = None
        if identity.condition is not None and first is not None:
            n = min(self.order, self.partition_order)
            oracle = enumerate_condition_partitions(identity.condition, n)
            mismatch = first.first_mismatch(oracle, n)
            if mismatch is not None:
                self.logger.warning(
                    f"{identity.name}: partition count {identity.condition} differs at q^{mismatch}"
                )
            partition = PartitionCheck(condition=identity.condition, order=n, mismatch=mismatch)

        report = IdentityReport(
            name=identity.name,
            order=self.order,
            product=identity.product.label(),
            sides=tuple(sides),
            partition=partition,
        )
        status = "verified" if report.passed else "FAILED"
        self.logger.debug(f"{identity.name}: {status} to q^{self.order}")
        return report

    def verify_all(self, identities: Iterable[Identity]) -> VerificationReport:
        with log_duration(self.logger, f"Verification to q^{self.order}"):
            reports = tuple(self.verify(identity) for identity in identities)
        passed = sum(r.passed for r in reports)
        self.logger.info(f"Verified {passed}/{len(reports)} identities to q^{self.order}")
        return VerificationReport(order=self.order, identities=reports)


def verify_identities(
    identities: Iterable[Identity],
    order: int = DEFAULT_ORDER,
    partition_order: int = PARTITION_CHECK_ORDER,
) -> VerificationReport:
    """Compare every sum side of every identity with its product side to q^order.

    A mismatch is recorded in the report, never raised.
    """
    return IdentityVerifier(order, partition_order).verify_all(identities)
