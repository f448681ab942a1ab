"""Working precision and the real/rational carriers used across nahmscan.

Reals are ``mpmath.mpf`` values. A ``PrecisionContext`` names the decimal
working precision; every kernel operation evaluates inside ``ctx.scope()``,
which adds guard digits on top of the requested precision.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from config import DEFAULT_DIGITS, MIN_DIGITS
from utils.exceptions import DomainError, ValidationError

Real = mpf
Rational = Fraction

GUARD_DIGITS = 10


def as_fraction(value: int | str | Fraction) -> Fraction:
    """Parse an exact rational from an int, a ``"p/q"`` string or a Fraction."""
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"Not a rational number: {value!r}") from e


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision for real evaluation."""

    digits: int = DEFAULT_DIGITS

    def __post_init__(self) -> None:
        """Reject precisions below the supported floor."""
        if not isinstance(self.digits, int) or self.digits < MIN_DIGITS:
            raise ValidationError(f"digits must be an integer >= {MIN_DIGITS}, got {self.digits}")

    def scope(self):
        """Context manager setting mpmath's working precision (with guard digits)."""
        return mpmath.workdps(self.digits + GUARD_DIGITS)

    def doubled(self) -> "PrecisionContext":
        """Context with twice the digits, used to re-verify hits."""
        return PrecisionContext(2 * self.digits)

    def real(self, value: int | str | Fraction | float | mpf) -> mpf:
        """Convert a number to a Real at this precision (rationals exactly rounded)."""
        with self.scope():
            if isinstance(value, Fraction):
                return mpf(value.numerator) / value.denominator
            if isinstance(value, str) and "/" in value:
                frac = as_fraction(value)
                return mpf(frac.numerator) / frac.denominator
            return mpf(value)

    def power_of_ten(self, exponent: int) -> mpf:
        """Return 10**exponent as a Real."""
        with self.scope():
            return mpf(10) ** exponent

    @property
    def tolerance(self) -> mpf:
        """Agreement expected from a closed-form check: 10^-(digits-10)."""
        return self.power_of_ten(-(self.digits - 10))

    @property
    def residual_tolerance(self) -> mpf:
        """Pass threshold for modularity residuals: 10^-(digits/3)."""
        return self.power_of_ten(-(self.digits // 3))

    def pi(self) -> mpf:
        """Return pi at this precision."""
        with self.scope():
            return +mpmath.pi

    def ln(self, x: mpf) -> mpf:
        """Natural logarithm of a positive Real."""
        with self.scope():
            x = mpf(x)
            if x <= 0:
                raise DomainError(f"ln requires a positive argument, got {mpmath.nstr(x, 10)}")
            return mpmath.log(x)

    def exp(self, x: mpf) -> mpf:
        """Exponential of a Real."""
        with self.scope():
            return mpmath.exp(x)

    def sqrt(self, x: mpf) -> mpf:
        """Square root of a nonnegative Real."""
        with self.scope():
            x = mpf(x)
            if x < 0:
                raise DomainError(f"sqrt requires a nonnegative argument, got {mpmath.nstr(x, 10)}")
            return mpmath.sqrt(x)

    def sin(self, x: mpf) -> mpf:
        """Sine of a Real."""
        with self.scope():
            return mpmath.sin(x)

    def div(self, x: mpf, y: mpf) -> mpf:
        """Quotient x / y, rejecting a zero divisor."""
        with self.scope():
            if y == 0:
                raise DomainError("division by zero")
            return mpf(x) / y

    def power(self, x: mpf, exponent: int | Fraction) -> mpf:
        """x raised to an integer or rational exponent (x > 0 for non-integers)."""
        with self.scope():
            x = mpf(x)
            if isinstance(exponent, int) or Fraction(exponent).denominator == 1:
                return x ** int(exponent)
            if x <= 0:
                raise DomainError("rational powers require a positive base")
            exponent = Fraction(exponent)
            return mpmath.power(x, mpf(exponent.numerator) / exponent.denominator)
