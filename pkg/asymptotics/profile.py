"""Asymptotic profiles of Nahm-type sums.

The B-independent data (Q, xi, Atilde, alpha and the Gaussian moments) lives
in a ``ProfileBase`` that is computed once per (A, J) and shared by every
term of a search; ``term_constants`` adds the B-dependent beta and c_p.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath
from mpmath import mpf

from asymptotics.datum import Matrix, NahmDatum
from asymptotics.gaussian import GaussianMoments
from asymptotics.qsystem import solve_Q
from asymptotics.residuals import TermAsymptotics
from asymptotics.towers import HalfEpsSeries, c_tower, d_tower
from config import MAX_P
from numerics.polylog import rogers_dilog
from numerics.precision import PrecisionContext
from utils.exceptions import ValidationError
from utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class ProfileBase:
    """Constants that depend on (A, J) only."""

    A: Matrix
    J: tuple[int, ...]
    ctx: PrecisionContext
    Q: tuple[mpf, ...]
    QJ: tuple[mpf, ...]
    xi: tuple[mpf, ...]
    Atilde: mpmath.matrix
    detAtilde: mpf
    alpha: mpf
    gamma_shift: mpf
    moments: GaussianMoments
    _towers: dict[tuple[int, Fraction, int], HalfEpsSeries] = field(
        default_factory=dict, repr=False
    )

    @property
    def k(self) -> int:
        return len(self.J)

    def tower(self, axis: int, B_i: Fraction, P: int) -> HalfEpsSeries:
        """D tower for one axis, memoized by (axis, B_i, P)."""
        key = (axis, Fraction(B_i), P)
        if key not in self._towers:
            self._towers[key] = d_tower(
                axis, Fraction(B_i), self.xi[axis], self.J[axis], self.Q[axis], P, self.ctx
            )
        return self._towers[key]


def build_base(A: Matrix, J: Sequence[int], ctx: PrecisionContext) -> ProfileBase:
    """Solve the Q-system and derive xi, Atilde, alpha and the gamma shift."""
    J = tuple(J)
    Q = solve_Q(A, J, ctx)
    k = len(J)
    with ctx.scope():
        QJ = tuple(Q[i] ** J[i] for i in range(k))
        xi = tuple(J[i] * QJ[i] / (1 - QJ[i]) for i in range(k))
        Atilde = mpmath.matrix(k, k)
        for i in range(k):
            for j in range(k):
                Atilde[i, j] = ctx.real(A[i][j]) + (xi[i] if i == j else 0)
        detAtilde = mpmath.det(Atilde)
        if detAtilde <= 0:
            raise ValidationError("A + diag(xi) is not positive definite")
        L1 = rogers_dilog(mpf(1), ctx)
        alpha = sum((L1 - rogers_dilog(QJ[i], ctx)) / J[i] for i in range(k))
        gamma_shift = sum(J[i] * (1 + QJ[i]) / (1 - QJ[i]) for i in range(k)) / 24
    moments = GaussianMoments(Atilde, ctx)
    logger.info(
        f"Built profile base for J={J} at {ctx.digits} digits: alpha={mpmath.nstr(alpha, 20)}"
    )
    return ProfileBase(
        A=A, J=J, ctx=ctx, Q=Q, QJ=QJ, xi=xi, Atilde=Atilde, detAtilde=detAtilde,
        alpha=alpha, gamma_shift=gamma_shift, moments=moments,
    )


def c_constants(base: ProfileBase, tower: HalfEpsSeries, ctx: PrecisionContext) -> tuple[mpf, ...]:
    """c_p = E[C_2p] for p = 1..P under the Gaussian with covariance Atilde^-1."""
    P = tower.order // 2
    with ctx.scope():
        return tuple(base.moments.expectation(tower[2 * p]) for p in range(1, P + 1))


def _check_order(P: int) -> None:
    if not isinstance(P, int) or not 1 <= P <= MAX_P:
        raise ValidationError(f"expansion order P must be in [1, {MAX_P}], got {P}")


def term_constants(
    base: ProfileBase, B: Sequence[Fraction], P: int, ctx: PrecisionContext
) -> TermAsymptotics:
    """beta, gamma (for C = 0) and c_1..c_P of the term with linear part B."""
    _check_order(P)
    B = tuple(Fraction(b) for b in B)
    if len(B) != base.k:
        raise ValidationError(f"B must have {base.k} entries, got {len(B)}")
    with ctx.scope():
        tower = c_tower([base.tower(i, B[i], P) for i in range(base.k)], P)
    c = c_constants(base, tower, ctx)
    with ctx.scope():
        beta = base.detAtilde ** mpf(-0.5)
        for i in range(base.k):
            # sqrt(J_i): n_i advances in steps of J_i in the Gaussian integral
            QB = ctx.power(base.Q[i], B[i])
            beta *= mpmath.sqrt(base.J[i]) * QB / mpmath.sqrt(1 - base.QJ[i])
    return TermAsymptotics(beta=beta, gamma=base.gamma_shift, c=c)


@dataclass(frozen=True)
class AsymptoticProfile:
    """beta e^(alpha/eps) e^(-gamma eps)(1 + sum c_p eps^p) for one Nahm-type sum."""

    datum: NahmDatum
    Q: tuple[mpf, ...]
    xi: tuple[mpf, ...]
    Atilde: mpmath.matrix
    detAtilde: mpf
    alpha: mpf
    beta: mpf
    gamma: mpf
    c: tuple[mpf, ...]
    P: int
    base: ProfileBase = field(repr=False, compare=False)

    @property
    def term(self) -> TermAsymptotics:
        return TermAsymptotics(beta=self.beta, gamma=self.gamma, c=self.c)


def build_profile(
    datum: NahmDatum, P: int, ctx: PrecisionContext, base: ProfileBase | None = None
) -> AsymptoticProfile:
    """Full asymptotic profile of one datum; ``base`` may be reused across data sharing (A, J)."""
    _check_order(P)
    if datum.has_restricted_support:
        raise ValidationError(
            "asymptotics are only available for sums over all n >= 0",
            details=f"lower bounds {datum.lower}",
        )
    datum.require_positive_definite()
    if base is None:
        base = build_base(datum.A, datum.J, ctx)
    elif base.A != datum.A or base.J != datum.J:
        raise ValidationError("profile base was built for a different (A, J)")
    term = term_constants(base, datum.B, P, ctx)
    with ctx.scope():
        gamma = term.gamma + ctx.real(datum.C)
    return AsymptoticProfile(
        datum=datum, Q=base.Q, xi=base.xi, Atilde=base.Atilde, detAtilde=base.detAtilde,
        alpha=base.alpha, beta=term.beta, gamma=gamma, c=term.c, P=P, base=base,
    )


def solve_C(profile: AsymptoticProfile, ctx: PrecisionContext) -> mpf:
    """The C for which the linear constraint c_1 = gamma holds; independent of the datum's own C."""
    with ctx.scope():
        return profile.c[0] - profile.base.gamma_shift


def product_alpha(pairs: int, modulus: int, ctx: PrecisionContext) -> mpf:
    """Growth exponent P pi^2 / (3M) of a product with P symmetric residue pairs modulo M."""
    if pairs < 0 or modulus < 1:
        raise ValidationError(f"need pairs >= 0 and modulus >= 1, got {pairs}, {modulus}")
    with ctx.scope():
        return pairs * mpmath.pi**2 / (3 * modulus)


def profile_record(profile: AsymptoticProfile, ctx: PrecisionContext) -> dict[str, Any]:
    """Full-precision decimal strings for every profile constant."""

    def s(x: mpf) -> str:
        return mpmath.nstr(x, ctx.digits)

    with ctx.scope():
        k = len(profile.Q)
        return {
            "Q": [s(x) for x in profile.Q],
            "xi": [s(x) for x in profile.xi],
            "Atilde": [[s(profile.Atilde[i, j]) for j in range(k)] for i in range(k)],
            "detAtilde": s(profile.detAtilde),
            "alpha": s(profile.alpha),
            "beta": s(profile.beta),
            "gamma": s(profile.gamma),
            "c": [s(x) for x in profile.c],
            "P": profile.P,
        }
