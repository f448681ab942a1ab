"""Dilogarithm, Rogers dilogarithm and negative-order polylogarithms on [0, 1]."""

from functools import lru_cache

import mpmath
from mpmath import mpf

from numerics.precision import PrecisionContext
from utils.exceptions import DomainError


def _check_unit_interval(z: mpf, name: str) -> mpf:
    z = mpf(z)
    if z < 0 or z > 1:
        raise DomainError(f"{name} is defined here on [0, 1] only, got {mpmath.nstr(z, 15)}")
    return z


def _li2_series(z: mpf) -> mpf:
    """Sum z^n/n^2 at the current precision (intended for 0 <= z <= 1/2)."""
    total = mpf(0)
    power = mpf(1)
    n = 0
    while True:
        n += 1
        power *= z
        term = power / (n * n)
        total += term
        if term < mpmath.eps:
            return total


def li2(z: mpf, ctx: PrecisionContext) -> mpf:
    """Dilogarithm Li2(z) for z in [0, 1].

    The defining series is only summed for z <= 1/2; larger arguments go
    through the reflection Li2(z) + Li2(1-z) = pi^2/6 - ln(z) ln(1-z).
    """
    with ctx.scope():
        z = _check_unit_interval(z, "li2")
        if z == 0:
            return mpf(0)
        if z == 1:
            return mpmath.pi**2 / 6
        if z <= mpf(1) / 2:
            return _li2_series(z)
        w = 1 - z
        return mpmath.pi**2 / 6 - mpmath.log(z) * mpmath.log(w) - _li2_series(w)


def rogers_dilog(z: mpf, ctx: PrecisionContext) -> mpf:
    """Rogers dilogarithm L(z) = Li2(z) + ln(z) ln(1-z)/2, with L(0)=0 and L(1)=pi^2/6."""
    with ctx.scope():
        z = _check_unit_interval(z, "rogers_dilog")
        if z == 0:
            return mpf(0)
        if z == 1:
            return mpmath.pi**2 / 6
        return li2(z, ctx) + mpmath.log(z) * mpmath.log(1 - z) / 2


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> tuple[int, ...]:
    """Eulerian numbers A(n, 0..n-1) for n >= 1."""
    if n == 1:
        return (1,)
    prev = eulerian_row(n - 1)
    row = []
    for k in range(n):
        left = (k + 1) * prev[k] if k < len(prev) else 0
        right = (n - k) * prev[k - 1] if k >= 1 else 0
        row.append(left + right)
    return tuple(row)


def polylog_neg(n: int, z: mpf, ctx: PrecisionContext) -> mpf:
    """Li_{-n}(z) for n >= 0 and 0 < z < 1, from its closed rational form.

    Li_0(z) = z/(1-z) and Li_{-n}(z) = z * sum_k A(n,k) z^k / (1-z)^(n+1)
    with A the Eulerian numbers.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"polylog_neg order must be a nonnegative integer, got {n!r}")
    with ctx.scope():
        z = mpf(z)
        if z <= 0 or z >= 1:
            raise DomainError(f"polylog_neg requires 0 < z < 1, got {mpmath.nstr(z, 15)}")
        if n == 0:
            return z / (1 - z)
        numerator = mpmath.polyval(list(reversed(eulerian_row(n))), z)
        return z * numerator / (1 - z) ** (n + 1)
