"""Recognize Reals as small-denominator rationals via continued fractions."""

from fractions import Fraction

import mpmath
import sympy
from mpmath import mpf
from sympy.ntheory.continued_fraction import (
    continued_fraction_convergents,
    continued_fraction_iterator,
)

from utils.exceptions import ValidationError


def exact_rational(x: mpf | Fraction | int) -> sympy.Rational:
    """The exact binary rational carried by an mpf (or a Fraction/int as is)."""
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return sympy.Rational(x)
    if not isinstance(x, mpf):
        x = mpf(x)
    if not mpmath.isfinite(x):
        raise ValidationError("cannot reconstruct a non-finite value")
    if x == 0:
        return sympy.Rational(0)
    # read the raw tuple: mpf(x) would round to the ambient precision
    sign, mantissa, exponent, _ = x._mpf_
    value = sympy.Rational(int(mantissa)) * sympy.Rational(2) ** int(exponent)
    return -value if sign else value


def rational_reconstruct(x: mpf, max_den: int, tol: mpf) -> Fraction | None:
    """First continued-fraction convergent p/q of x with q <= max_den and |x - p/q| < tol.

    Returns None when the convergents outgrow max_den before meeting tol.
    All comparisons are exact, so the result does not depend on the ambient
    mpmath precision.
    """
    if max_den < 1:
        raise ValidationError(f"max_den must be >= 1, got {max_den}")
    tol_exact = exact_rational(tol)
    if tol_exact <= 0:
        raise ValidationError("tol must be positive")

    target = exact_rational(x)
    for convergent in continued_fraction_convergents(continued_fraction_iterator(target)):
        convergent = sympy.Rational(convergent)
        if convergent.q > max_den:
            return None
        if abs(target - convergent) < tol_exact:
            return Fraction(int(convergent.p), int(convergent.q))
    return None
