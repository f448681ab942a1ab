"""Central Gaussian moments with covariance Atilde^-1, by the Isserlis recursion."""

from collections.abc import Sequence

import mpmath
from mpmath import mpf

from asymptotics.towers import Monomial, TPolynomial
from numerics.precision import PrecisionContext
from utils.exceptions import ValidationError


class GaussianMoments:
    """E[t^m] under the mean-zero Gaussian with density proportional to exp(-t^T Atilde t / 2).

    Moments are memoized; E[t_j t^m'] = sum_l Sigma_jl m'_l E[t^(m' - e_l)].
    """

    def __init__(self, Atilde: mpmath.matrix, ctx: PrecisionContext):
        self.ctx = ctx
        with ctx.scope():
            Atilde = mpmath.matrix(Atilde)
            self.k = Atilde.rows
            if Atilde.rows != Atilde.cols:
                raise ValidationError("Atilde must be square")
            for i in range(self.k):
                for j in range(i):
                    if abs(Atilde[i, j] - Atilde[j, i]) > ctx.tolerance:
                        raise ValidationError("Atilde must be symmetric")
            try:
                mpmath.cholesky(Atilde)
            except (ValueError, ZeroDivisionError) as e:
                raise ValidationError("Atilde must be positive definite") from e
            self.sigma = mpmath.inverse(Atilde)
        self._cache: dict[Monomial, mpf] = {(0,) * self.k: mpf(1)}

    def moment(self, exponents: Sequence[int]) -> mpf:
        """E[prod t_i^m_i]; zero for odd total degree."""
        m = tuple(exponents)
        if len(m) != self.k or any(e < 0 for e in m):
            raise ValidationError(
                f"moment exponents must be {self.k} nonnegative integers, got {m}"
            )
        if sum(m) % 2:
            return mpf(0)
        with self.ctx.scope():
            return self._moment(m)

    def _moment(self, m: Monomial) -> mpf:
        cached = self._cache.get(m)
        if cached is not None:
            return cached
        j = next(i for i, e in enumerate(m) if e)
        rest = list(m)
        rest[j] -= 1
        total = mpf(0)
        for i in range(self.k):
            if rest[i]:
                lowered = list(rest)
                lowered[i] -= 1
                total += self.sigma[j, i] * rest[i] * self._moment(tuple(lowered))
        self._cache[m] = total
        return total

    def expectation(self, poly: TPolynomial) -> mpf:
        """Expectation of a polynomial in t."""
        with self.ctx.scope():
            total = mpf(0)
            for m, c in poly.terms.items():
                if sum(m) % 2 == 0:
                    total += c * self._moment(m)
            return total


def gaussian_moment(Atilde: mpmath.matrix, exponents: Sequence[int], ctx: PrecisionContext) -> mpf:
    """One-off E[prod t_i^m_i] with covariance Atilde^-1."""
    return GaussianMoments(Atilde, ctx).moment(exponents)
