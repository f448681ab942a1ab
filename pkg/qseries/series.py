"""Truncated power series in q with exact integer coefficients."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from utils.exceptions import ValidationError


def _convolve(a: list[int], b: list[int], length: int) -> list[int]:
    """Product of two coefficient lists, truncated to ``length`` terms."""
    out = [0] * length
    b = b[:length]
    for i, ai in enumerate(a[:length]):
        if not ai:
            continue
        for j, bj in enumerate(b[: length - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def binomial_series(exponent: int, count: int) -> list[int]:
    """Coefficients of (1 - x)^exponent up to x^(count - 1), any integer exponent."""
    coeffs = [1]
    for j in range(1, count):
        coeffs.append(coeffs[-1] * (j - 1 - exponent) // j)
    return coeffs


@dataclass(frozen=True)
class QSeriesTrunc:
    """q^offset * (a_0 + a_1 q + ... + a_N q^N), known modulo q^(offset + N + 1).

    ``order`` is N, the relative truncation order. Arithmetic works on the
    normalized form (offset folded into the coefficients) and never reads past
    the known precision of either operand.
    """

    coeffs: tuple[int, ...]
    offset: int = 0

    def __post_init__(self) -> None:
        """Validate and coerce coefficients."""
        if not self.coeffs:
            raise ValidationError("a truncated series needs at least one coefficient")
        if self.offset < 0:
            raise ValidationError(f"offset must be >= 0, got {self.offset}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # construction

    @classmethod
    def zero(cls, order: int) -> "QSeriesTrunc":
        """The zero series known to order N."""
        _check_order(order)
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeriesTrunc":
        """The constant series 1 known to order N."""
        _check_order(order)
        return cls((1,) + (0,) * order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient: int = 1) -> "QSeriesTrunc":
        """coefficient * q^power, truncated at order N."""
        _check_order(order)
        coeffs = [0] * (order + 1)
        if 0 <= power <= order:
            coeffs[power] = coefficient
        return cls(tuple(coeffs))

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], order: int) -> "QSeriesTrunc":
        """Build from a sparse {power: coefficient} mapping; powers past N are dropped."""
        _check_order(order)
        coeffs = [0] * (order + 1)
        for power, value in terms.items():
            if power < 0:
                raise ValidationError(f"negative power {power} in series terms")
            if power <= order:
                coeffs[power] += value
        return cls(tuple(coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "QSeriesTrunc":
        """Build from a dense coefficient sequence a_0..a_N."""
        return cls(tuple(coeffs))

    # shape

    @property
    def order(self) -> int:
        """Relative truncation order N (len(coeffs) - 1)."""
        return len(self.coeffs) - 1

    @property
    def precision(self) -> int:
        """Absolute precision: the series is known modulo q^precision."""
        return self.offset + len(self.coeffs)

    def normalized(self) -> "QSeriesTrunc":
        """Equivalent series with offset 0."""
        if self.offset == 0:
            return self
        return QSeriesTrunc((0,) * self.offset + self.coeffs)

    def truncate(self, order: int) -> "QSeriesTrunc":
        """Normalized series known to absolute order ``order``."""
        _check_order(order)
        if order >= self.precision:
            raise ValidationError(
                f"cannot truncate to order {order}: series only known below q^{self.precision}"
            )
        return QSeriesTrunc(self.normalized().coeffs[: order + 1])

    def coefficients(self) -> list[int]:
        """Dense absolute coefficients a_0..a_{precision-1}."""
        return list(self.normalized().coeffs)

    def __getitem__(self, power: int) -> int:
        """Coefficient of q^power (absolute)."""
        if power < 0 or power >= self.precision:
            raise IndexError(f"q^{power} is outside the known range [0, {self.precision})")
        if power < self.offset:
            return 0
        return self.coeffs[power - self.offset]

    def __len__(self) -> int:
        """Number of known absolute coefficients."""
        return self.precision

    # arithmetic

    def _aligned(self, other: "QSeriesTrunc") -> tuple[list[int], list[int], int]:
        length = min(self.precision, other.precision)
        return self.coefficients()[:length], other.coefficients()[:length], length

    def __add__(self, other: "QSeriesTrunc") -> "QSeriesTrunc":
        """Termwise sum at the common precision."""
        if not isinstance(other, QSeriesTrunc):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return QSeriesTrunc(tuple(x + y for x, y in zip(a, b, strict=True)))

    def __neg__(self) -> "QSeriesTrunc":
        """Negated series."""
        return QSeriesTrunc(tuple(-c for c in self.coeffs), self.offset)

    def __sub__(self, other: "QSeriesTrunc") -> "QSeriesTrunc":
        """Termwise difference at the common precision."""
        if not isinstance(other, QSeriesTrunc):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "QSeriesTrunc | int") -> "QSeriesTrunc":
        """Cauchy product (or integer scaling); offsets add, relative orders take the minimum."""
        if isinstance(other, int):
            return QSeriesTrunc(tuple(other * c for c in self.coeffs), self.offset)
        if not isinstance(other, QSeriesTrunc):
            return NotImplemented
        length = min(len(self.coeffs), len(other.coeffs))
        product = _convolve(list(self.coeffs), list(other.coeffs), length)
        return QSeriesTrunc(tuple(product), self.offset + other.offset)

    __rmul__ = __mul__

    def shift(self, power: int) -> "QSeriesTrunc":
        """Multiply by q^power, keeping the absolute truncation order."""
        if power < 0:
            raise ValidationError(f"shift must be >= 0, got {power}")
        dense = self.coefficients()
        shifted = [0] * min(power, len(dense)) + dense[: max(len(dense) - power, 0)]
        return QSeriesTrunc(tuple(shifted))

    def inverse(self) -> "QSeriesTrunc":
        """Multiplicative inverse; requires a constant term of +1 or -1."""
        a = self.coefficients()
        if a[0] not in (1, -1):
            raise ValidationError(f"series inversion needs a_0 = +-1, got a_0 = {a[0]}")
        inv = [a[0]]
        for n in range(1, len(a)):
            acc = sum(a[j] * inv[n - j] for j in range(1, n + 1) if a[j])
            inv.append(-a[0] * acc)
        return QSeriesTrunc(tuple(inv))

    def times_one_minus_power(self, m: int, exponent: int = 1) -> "QSeriesTrunc":
        """Multiply by (1 - q^m)^exponent for any integer exponent (m >= 1)."""
        if m < 1:
            raise ValidationError(f"(1 - q^m) needs m >= 1, got {m}")
        a = self.coefficients()
        if exponent == 0:
            return QSeriesTrunc(tuple(a))
        n = len(a)
        if exponent == 1:
            for i in range(n - 1, m - 1, -1):
                a[i] -= a[i - m]
            return QSeriesTrunc(tuple(a))
        if exponent == -1:
            for i in range(m, n):
                a[i] += a[i - m]
            return QSeriesTrunc(tuple(a))
        weights = binomial_series(exponent, (n - 1) // m + 1)
        out = [0] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, w in enumerate(weights):
                k = i + j * m
                if k >= n:
                    break
                out[k] += ai * w
        return QSeriesTrunc(tuple(out))

    # comparison

    def first_mismatch(self, other: "QSeriesTrunc", order: int | None = None) -> int | None:
        """Smallest power where the two series differ, or None if they agree."""
        limit = min(self.precision, other.precision)
        if order is not None:
            limit = min(limit, order + 1)
        a, b = self.coefficients(), other.coefficients()
        for n in range(limit):
            if a[n] != b[n]:
                return n
        return None

    def agrees_with(self, other: "QSeriesTrunc", order: int | None = None) -> bool:
        """Whether the series agree up to the common (or given) order."""
        return self.first_mismatch(other, order) is None

    def __str__(self) -> str:
        """Short human-readable rendering."""
        terms = [f"{c}q^{n}" for n, c in enumerate(self.coefficients()) if c]
        return (" + ".join(terms[:12]) or "0") + f" + O(q^{self.precision})"


def _check_order(order: int) -> None:
    if not isinstance(order, int) or order < 0:
        raise ValidationError(f"truncation order must be a nonnegative integer, got {order!r}")


def sum_series(series: Iterable[QSeriesTrunc], order: int) -> QSeriesTrunc:
    """Termwise sum of several series, truncated at order N."""
    total = QSeriesTrunc.zero(order)
    for s in series:
        total = total + s
    return total
