"""Exact Bernoulli polynomial coefficients."""

from fractions import Fraction
from functools import lru_cache

import sympy

from utils.exceptions import ValidationError

_U = sympy.Symbol("u")


@lru_cache(maxsize=64)
def bernoulli_poly(p: int) -> tuple[Fraction, ...]:
    """Coefficients of B_p(u), constant term first (length p + 1)."""
    if not isinstance(p, int) or p < 0:
        raise ValidationError(f"Bernoulli polynomial index must be >= 0, got {p!r}")
    poly = sympy.Poly(sympy.bernoulli(p, _U), _U)
    coeffs = [sympy.Rational(c) for c in reversed(poly.all_coeffs())]
    coeffs += [sympy.Rational(0)] * (p + 1 - len(coeffs))
    return tuple(Fraction(int(c.p), int(c.q)) for c in coeffs)
