"""Modularity residuals for single- and multi-term Nahm-type sums."""

from collections.abc import Sequence
from dataclasses import dataclass
from math import factorial

import mpmath
from mpmath import mpf

from numerics.precision import PrecisionContext
from utils.exceptions import DegenerateError, ValidationError


@dataclass(frozen=True)
class TermAsymptotics:
    """beta e^(alpha/eps) e^(-gamma eps) (1 + sum c_p eps^p) for one term; alpha is shared."""

    beta: mpf
    gamma: mpf
    c: tuple[mpf, ...]


@dataclass(frozen=True)
class ModularityResiduals:
    """lam and L_1..L_P of ln(sum_p S_p eps^p / S_0)."""

    lam: mpf
    L: tuple[mpf, ...]

    @property
    def cstar(self) -> mpf:
        """Exponent C* of the q^C* prefactor that cancels the linear term."""
        return self.L[0]

    def residuals(self) -> tuple[mpf, ...]:
        """L_2..L_P."""
        return self.L[1:]

    def passes(self, tol: mpf) -> bool:
        return all(abs(x) < tol for x in self.L[1:])


def _prefactor_series(term: TermAsymptotics, P: int) -> list[mpf]:
    """Coefficients of e^(-gamma eps)(1 + sum c_p eps^p) through eps^P."""
    c = (mpf(1),) + tuple(term.c)
    if len(c) <= P:
        raise ValidationError(f"term carries c_1..c_{len(c) - 1}, need order {P}")
    return [
        sum(c[j] * (-term.gamma) ** (p - j) / factorial(p - j) for j in range(p + 1))
        for p in range(P + 1)
    ]


def modularity_residuals(
    terms: Sequence[TermAsymptotics], P: int, ctx: PrecisionContext
) -> ModularityResiduals:
    """Log-coefficients of the combined prefactor; L_p = 0 for p >= 2 is necessary for modularity.

    Raises:
        DegenerateError: If the leading coefficients cancel (sum of beta vanishes)

    """
    if not terms:
        raise ValidationError("need at least one term")
    if P < 1:
        raise ValidationError(f"order P must be >= 1, got {P}")
    with ctx.scope():
        S = [mpf(0)] * (P + 1)
        for term in terms:
            for p, value in enumerate(_prefactor_series(term, P)):
                S[p] += term.beta * value
        scale = max(abs(t.beta) for t in terms)
        if abs(S[0]) <= ctx.tolerance * scale:
            raise DegenerateError(
                "combined leading coefficient vanishes",
                details=f"sum beta = {mpmath.nstr(S[0], 5)}",
            )
        s = [x / S[0] for x in S]
        L: list[mpf] = []
        for p in range(1, P + 1):
            acc = s[p]
            for j in range(1, p):
                acc -= mpf(j) / p * L[j - 1] * s[p - j]
            L.append(acc)
        return ModularityResiduals(lam=S[0], L=tuple(L))


def constraint_residuals(
    gamma: mpf, c: Sequence[mpf], P: int, ctx: PrecisionContext
) -> tuple[mpf, ...]:
    """r_1..r_P with r_p = [eps^p] e^(-gamma eps)(1 + sum c_j eps^j)."""
    with ctx.scope():
        series = _prefactor_series(TermAsymptotics(beta=mpf(1), gamma=mpf(gamma), c=tuple(c)), P)
        return tuple(series[1:])
