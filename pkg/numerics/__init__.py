"""Arbitrary-precision kernel: working precision, polylogarithms, Bernoulli polynomials."""

from .bernoulli import bernoulli_poly
from .polylog import li2, polylog_neg, rogers_dilog
from .precision import PrecisionContext, Rational, Real, as_fraction
from .recognize import rational_reconstruct

__all__ = [
    "PrecisionContext",
    "Real",
    "Rational",
    "as_fraction",
    "li2",
    "rogers_dilog",
    "polylog_neg",
    "bernoulli_poly",
    "rational_reconstruct",
]
