"""Evaluate the truncated asymptotic expansion next to the sums and products themselves."""

from fractions import Fraction
from typing import TYPE_CHECKING

import mpmath
from mpmath import mpf

from asymptotics.datum import NahmDatum
from asymptotics.profile import AsymptoticProfile
from numerics.precision import PrecisionContext
from utils.exceptions import ValidationError
from utils.logging import get_logger

if TYPE_CHECKING:
    from qseries.products import ProductSpec

logger = get_logger(__name__)


def _check_eps(eps: mpf) -> None:
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")


def asymptotic_eval(profile: AsymptoticProfile, eps: mpf, ctx: PrecisionContext) -> mpf:
    """beta e^(alpha/eps) e^(-gamma eps) (1 + sum_{p<=P} c_p eps^p)."""
    _check_eps(eps)
    with ctx.scope():
        eps = mpf(eps)
        tail = 1 + sum(c * eps ** (p + 1) for p, c in enumerate(profile.c))
        return profile.beta * mpmath.exp(profile.alpha / eps - profile.gamma * eps) * tail


def nahm_numeric(datum: NahmDatum, eps: mpf, ctx: PrecisionContext) -> mpf:
    """F_{A,B,C,J}(e^-eps) by direct summation; C may be rational.

    Every denominator is at most prod_i 1/(q^J_i; q^J_i)_inf, so terms with
    exponent above C + (ln of that bound + working digits * ln 10)/eps are
    negligible.
    """
    _check_eps(eps)
    datum.require_positive_definite()
    with ctx.scope():
        eps = mpf(eps)
        q = mpmath.exp(-eps)
        bound = sum(-mpmath.log(mpmath.qp(q ** J, q ** J)) for J in datum.J)
        cutoff = ctx.real(datum.C) + (bound + (ctx.digits + 20) * mpmath.log(10)) / eps
        limit = Fraction(int(mpmath.ceil(cutoff)))

        inverse_poch: dict[int, list[mpf]] = {}

        def inv(J: int, n: int) -> mpf:
            row = inverse_poch.setdefault(J, [mpf(1)])
            while len(row) <= n:
                row.append(row[-1] / (1 - q ** (J * len(row))))
            return row[n]

        total = mpf(0)
        count = 0
        for n, exponent in datum.lattice_points(limit):
            term = mpmath.exp(-eps * (mpf(exponent.numerator) / exponent.denominator))
            for J, n_i in zip(datum.J, n, strict=True):
                term *= inv(J, n_i)
            total += term
            count += 1
        logger.debug(f"nahm_numeric summed {count} terms at eps={mpmath.nstr(eps, 6)}")
        return total


def product_numeric(
    spec: "ProductSpec", eps: mpf, ctx: PrecisionContext, shift: Fraction = Fraction(0)
) -> mpf:
    """q^shift times the Pochhammer quotient of ``spec`` at q = e^-eps."""
    _check_eps(eps)
    with ctx.scope():
        eps = mpf(eps)
        q = mpmath.exp(-eps)
        qM = q ** spec.modulus
        value = mpmath.exp(-eps * mpf(shift.numerator) / shift.denominator)
        for residue, mult in spec.numerator:
            value *= mpmath.qp(q ** residue, qM) ** mult
        for residue, mult in spec.denominator:
            value /= mpmath.qp(q ** residue, qM) ** mult
        if spec.extra is not None:
            value *= product_numeric(spec.extra, eps, ctx)
        return value
