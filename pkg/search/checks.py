"""Closed-form checks for the two built-in families: dilogarithm identities,
minimal polynomials of the Q-system roots, the printed Capparelli constraint
polynomials and the sum-side / product-side growth exponents."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from asymptotics.datum import NahmDatum
from asymptotics.profile import ProfileBase, build_base, build_profile, product_alpha
from asymptotics.residuals import constraint_residuals
from numerics.polylog import rogers_dilog
from numerics.precision import PrecisionContext
from search.corpus import Family, load_corpus
from utils.exceptions import ValidationError
from utils.logging import get_logger

logger = get_logger(__name__)

DILOG_CHECKS = ("cap", "mod9")

# Monomials B1^i B2^j keyed by (i, j).
Polynomial = dict[tuple[int, int], Fraction]

CAPPARELLI_C: Polynomial = {
    (0, 0): Fraction(-1, 24),
    (0, 1): Fraction(5, 144),
    (1, 1): Fraction(-1, 36),
    (1, 0): Fraction(1, 24),
    (2, 0): Fraction(1, 12),
    (0, 2): Fraction(7, 432),
}

CAPPARELLI_RESIDUALS: tuple[Polynomial, ...] = (
    {
        (2, 1): Fraction(-1, 288),
        (1, 2): Fraction(5, 576),
        (3, 0): Fraction(-1, 144),
        (0, 3): Fraction(-113, 31104),
        (1, 0): Fraction(1, 1152),
        (0, 1): Fraction(149, 6912),
        (0, 2): Fraction(-199, 20736),
        (2, 0): Fraction(-7, 576),
        (1, 1): Fraction(49, 1728),
    },
    {
        (2, 1): Fraction(31, 10368),
        (1, 2): Fraction(-127, 62208),
        (3, 0): Fraction(-7, 5184),
        (0, 3): Fraction(79, 1119744),
        (1, 3): Fraction(-173, 279936),
        (1, 0): Fraction(31, 6912),
        (0, 1): Fraction(335, 41472),
        (0, 2): Fraction(-5641, 746496),
        (0, 4): Fraction(2105, 6718464),
        (2, 0): Fraction(-37, 20736),
        (1, 1): Fraction(1093, 62208),
        (2, 2): Fraction(-31, 31104),
        (4, 0): Fraction(-7, 5184),
        (3, 1): Fraction(19, 7776),
    },
    {
        (3, 0): Fraction(-523, 663552),
        (0, 2): Fraction(-262765, 31850496),
        (2, 0): Fraction(-3157, 884736),
        (4, 0): Fraction(299, 221184),
        (0, 1): Fraction(11393, 1474560),
        (1, 0): Fraction(161, 49152),
        (2, 1): Fraction(5329, 1327104),
        (1, 2): Fraction(-19171, 7962624),
        (1, 3): Fraction(-32849, 11943936),
        (0, 6): Fraction(12769, 1934917632),
        (6, 0): Fraction(1, 41472),
        (5, 0): Fraction(1, 9216),
        (0, 5): Fraction(100903, 1074954240),
        (4, 1): Fraction(71, 165888),
        (3, 3): Fraction(-11, 2239488),
        (3, 2): Fraction(-721, 497664),
        (2, 3): Fraction(1373, 995328),
        (2, 4): Fraction(901, 17915904),
        (1, 4): Fraction(-20657, 35831808),
        (1, 5): Fraction(-565, 17915904),
        (5, 1): Fraction(1, 41472),
        (4, 2): Fraction(-1, 18432),
        (0, 4): Fraction(160699, 286654464),
        (1, 1): Fraction(55687, 2654208),
        (2, 2): Fraction(2161, 442368),
        (3, 1): Fraction(-1465, 331776),
        (0, 3): Fraction(793, 143327232),
    },
)


def _evaluate(poly: Polynomial, B1: Fraction, B2: Fraction) -> Fraction:
    return sum((c * B1**i * B2**j for (i, j), c in poly.items()), Fraction(0))


def capparelli_c_formula(B1: int | Fraction, B2: int | Fraction) -> Fraction:
    """The C that makes c_1 = gamma for the Capparelli (A, J), as an exact quadratic in B."""
    return _evaluate(CAPPARELLI_C, Fraction(B1), Fraction(B2))


def capparelli_residual_polys(
    B1: int | Fraction, B2: int | Fraction
) -> tuple[Fraction, Fraction, Fraction]:
    """The second, third and fourth constraints after eliminating C, as exact polynomials in B."""
    B1, B2 = Fraction(B1), Fraction(B2)
    return tuple(_evaluate(poly, B1, B2) for poly in CAPPARELLI_RESIDUALS)


def capparelli_constraint_spread(
    base: ProfileBase, points: Sequence[tuple[int, int]], ctx: PrecisionContext
) -> tuple[mpf, ...]:
    """Relative deviation from proportionality of computed and closed-form constraints.

    Covers the second to fourth constraint forms.

    With C solved, each computed form should be a fixed multiple of its
    polynomial across ``points``. Cross-multiplying against the point where
    the polynomial is largest keeps zeros of the polynomial harmless.
    """
    computed, exact = [], []
    for B in points:
        profile = build_profile(NahmDatum.create(A=base.A, B=B, J=base.J), 4, ctx, base)
        computed.append(constraint_residuals(profile.c[0], profile.c, 4, ctx)[1:])
        exact.append([ctx.real(x) for x in capparelli_residual_polys(*B)])
    spreads = []
    with ctx.scope():
        for i in range(len(CAPPARELLI_RESIDUALS)):
            ref = max(range(len(points)), key=lambda j: abs(exact[j][i]))
            scale = abs(computed[ref][i] * exact[ref][i])
            deviation = max(
                abs(computed[j][i] * exact[ref][i] - computed[ref][i] * exact[j][i])
                for j in range(len(points))
            )
            spreads.append(ctx.div(deviation, scale))
    return tuple(spreads)


def _family(name: str) -> Family:
    return load_corpus().family(name)


def dilog_check(name: str, ctx: PrecisionContext, target: mpf | None = None) -> mpf:
    """Absolute residual of the family's dilogarithm identity.

    Args:
        name: ``cap`` for L(1/4) + L(1/9)/3 = pi^2/18, ``mod9`` for
            L(Q_1) + L(Q_2^3)/3 = 4 pi^2/27 at the mod-9 Q-system root
        ctx: Working precision
        target: Right-hand side to test instead of the known value

    Returns:
        |left side - target|

    Raises:
        ValidationError: If ``name`` is not a known check

    """
    if name not in DILOG_CHECKS:
        raise ValidationError(
            f"Unknown dilogarithm check: {name}", details=f"known: {list(DILOG_CHECKS)}"
        )
    with ctx.scope():
        if name == "cap":
            lhs = rogers_dilog(mpf(1) / 4, ctx) + rogers_dilog(mpf(1) / 9, ctx) / 3
            known = mpmath.pi**2 / 18
        else:
            mod9 = _family("mod9")
            base = build_base(mod9.A, mod9.J, ctx)
            lhs = rogers_dilog(base.QJ[0], ctx) + rogers_dilog(base.QJ[1], ctx) / 3
            known = 4 * mpmath.pi**2 / 27
        residual = abs(lhs - (known if target is None else target))
    logger.debug(f"dilog check {name}: residual {mpmath.nstr(residual, 5)}")
    return residual


@dataclass(frozen=True)
class AlgebraicResidual:
    family: str
    label: str
    value: mpf


@dataclass(frozen=True)
class MinimalPolyReport:
    residuals: tuple[AlgebraicResidual, ...]
    tolerance: mpf

    @property
    def passed(self) -> bool:
        return all(abs(r.value) < self.tolerance for r in self.residuals)

    def failures(self) -> list[AlgebraicResidual]:
        return [r for r in self.residuals if not abs(r.value) < self.tolerance]


# label -> residual as a function of (Q1, Q2, xi1, xi2, sin(pi/18))
Residual = Callable[[mpf, mpf, mpf, mpf, mpf], mpf]

MOD9_RELATIONS: tuple[tuple[str, Residual], ...] = (
    ("Q1^3 - 3Q1^2 + 1", lambda Q1, Q2, x1, x2, s: Q1**3 - 3 * Q1**2 + 1),
    ("Q2^9 - 6Q2^6 + 3Q2^3 + 1", lambda Q1, Q2, x1, x2, s: Q2**9 - 6 * Q2**6 + 3 * Q2**3 + 1),
    ("xi1^3 - 3xi1 - 1", lambda Q1, Q2, x1, x2, s: x1**3 - 3 * x1 - 1),
    ("xi2^3 - 9xi2^2 - 54xi2 - 27", lambda Q1, Q2, x1, x2, s: x2**3 - 9 * x2**2 - 54 * x2 - 27),
    ("Q1 - (1 - 2 sin(pi/18))", lambda Q1, Q2, x1, x2, s: Q1 - (1 - 2 * s)),
    (
        "Q2^3 - (4 sin^2(pi/18) + 4 sin(pi/18))",
        lambda Q1, Q2, x1, x2, s: Q2**3 - (4 * s**2 + 4 * s),
    ),
)

CAPPARELLI_RELATIONS: tuple[tuple[str, Residual], ...] = (
    ("Q1 - 3/4", lambda Q1, Q2, x1, x2, s: Q1 - mpf(3) / 4),
    ("Q2^3 - 8/9", lambda Q1, Q2, x1, x2, s: Q2**3 - mpf(8) / 9),
    ("xi1 - 3", lambda Q1, Q2, x1, x2, s: x1 - 3),
    ("xi2 - 24", lambda Q1, Q2, x1, x2, s: x2 - 24),
)


def _relations(
    family: str,
    base: ProfileBase,
    relations: tuple[tuple[str, Residual], ...],
    ctx: PrecisionContext,
) -> list[AlgebraicResidual]:
    with ctx.scope():
        s = mpmath.sin(mpmath.pi / 18)
        args = (base.Q[0], base.Q[1], base.xi[0], base.xi[1], s)
        return [AlgebraicResidual(family, label, fn(*args)) for label, fn in relations]


def minimal_poly_check(ctx: PrecisionContext) -> MinimalPolyReport:
    """Residuals of the algebraic relations satisfied by Q and xi for both families."""
    residuals = []
    for name, relations in (("mod9", MOD9_RELATIONS), ("capparelli", CAPPARELLI_RELATIONS)):
        family = _family(name)
        residuals += _relations(name, build_base(family.A, family.J, ctx), relations, ctx)
    report = MinimalPolyReport(residuals=tuple(residuals), tolerance=ctx.tolerance)
    if not report.passed:
        logger.warning(f"Minimal polynomial check failed: {[r.label for r in report.failures()]}")
    return report


@dataclass(frozen=True)
class AlphaCrosscheck:
    family: str
    nahm_alpha: mpf
    product_alpha: mpf

    @property
    def difference(self) -> mpf:
        return abs(self.nahm_alpha - self.product_alpha)


def alpha_crosscheck(family: Family, ctx: PrecisionContext) -> AlphaCrosscheck:
    """Compare the sum-side alpha with the alpha of the family's product shape."""
    base = build_base(family.A, family.J, ctx)
    return AlphaCrosscheck(
        family=family.name,
        nahm_alpha=base.alpha,
        product_alpha=product_alpha(family.product_pairs, family.product_modulus, ctx),
    )
