import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from asymptotics.datum import NahmDatum
from asymptotics.expansion import asymptotic_eval, nahm_numeric, product_numeric
from asymptotics.profile import (
    build_base,
    build_profile,
    product_alpha,
    profile_record,
    solve_C,
    term_constants,
)
from asymptotics.residuals import TermAsymptotics, constraint_residuals, modularity_residuals
from numerics.precision import PrecisionContext
from search.checks import capparelli_c_formula, capparelli_constraint_spread
from utils.exceptions import DegenerateError, ValidationError

C_POINTS = [(b1, b2) for b1 in range(3) for b2 in range(3)]
POLY_POINTS = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]


def test_capparelli_base_constants(ctx, capparelli_base):
    with ctx.scope():
        assert abs(capparelli_base.xi[0] - 3) < ctx.tolerance
        assert abs(capparelli_base.xi[1] - 24) < ctx.tolerance
        assert abs(capparelli_base.detAtilde - 216) < ctx.tolerance
        assert abs(capparelli_base.gamma_shift - mpf(29) / 12) < ctx.tolerance
        assert abs(capparelli_base.alpha - mpmath.pi**2 / 18) < ctx.tolerance


def test_mod9_alpha(ctx, mod9_base):
    with ctx.scope():
        assert abs(mod9_base.alpha - 2 * mpmath.pi**2 / 27) < ctx.tolerance
        assert abs(product_alpha(2, 9, ctx) - mod9_base.alpha) < ctx.tolerance


@pytest.mark.parametrize("B", C_POINTS)
def test_solved_C_matches_closed_form(ctx, capparelli, capparelli_base, B):
    profile = build_profile(capparelli.datum(B), 4, ctx, capparelli_base)
    with ctx.scope():
        assert abs(solve_C(profile, ctx) - ctx.real(capparelli_c_formula(*B))) < mpf(10) ** -40


def test_known_sum_sides_have_known_C(ctx, capparelli, capparelli_base):
    with ctx.scope():
        zero = build_profile(capparelli.datum((0, 0)), 4, ctx, capparelli_base)
        shifted = build_profile(capparelli.datum((1, 0)), 4, ctx, capparelli_base)
        assert abs(solve_C(zero, ctx) + mpf(1) / 24) < ctx.tolerance
        assert abs(solve_C(shifted, ctx) - mpf(1) / 12) < ctx.tolerance


def test_constraint_forms_are_proportional_to_closed_forms(ctx, capparelli, capparelli_base):
    with ctx.scope():
        for B in POLY_POINTS:
            profile = build_profile(capparelli.datum(B), 4, ctx, capparelli_base)
            assert abs(constraint_residuals(profile.c[0], profile.c, 4, ctx)[0]) < ctx.tolerance
    spreads = capparelli_constraint_spread(capparelli_base, POLY_POINTS, ctx)
    assert all(s < mpf(10) ** -20 for s in spreads)


@pytest.mark.parametrize("B", [(0, 0), (1, 3), (2, 3)])
def test_mod9_sum_sides_pass(ctx, mod9, mod9_base, B):
    profile = build_profile(mod9.datum(B), 4, ctx, mod9_base)
    result = modularity_residuals([profile.term], 4, ctx)
    assert result.passes(ctx.residual_tolerance)


@pytest.mark.parametrize("B", [(1, 2), (5, 5)])
def test_mod9_non_modular_points_fail(ctx, mod9, mod9_base, B):
    profile = build_profile(mod9.datum(B), 4, ctx, mod9_base)
    result = modularity_residuals([profile.term], 4, ctx)
    assert not result.passes(ctx.residual_tolerance)


def test_cstar_is_the_linear_constraint(ctx, capparelli, capparelli_base):
    # with C = 0, the prefactor q^C* must absorb c_1 - gamma
    profile = build_profile(capparelli.datum((0, 0)), 4, ctx, capparelli_base)
    result = modularity_residuals([profile.term], 4, ctx)
    with ctx.scope():
        assert abs(result.cstar - (profile.c[0] - profile.gamma)) < ctx.tolerance
        assert abs(result.cstar + mpf(1) / 24) < ctx.tolerance


def test_cancelling_terms_are_degenerate(ctx):
    term = TermAsymptotics(beta=mpf(1), gamma=mpf(0), c=(mpf(0),) * 4)
    opposite = TermAsymptotics(beta=mpf(-1), gamma=mpf(0), c=(mpf(0),) * 4)
    with pytest.raises(DegenerateError):
        modularity_residuals([term, opposite], 4, ctx)
    with pytest.raises(ValidationError):
        modularity_residuals([], 4, ctx)
    with pytest.raises(ValidationError):
        modularity_residuals([TermAsymptotics(beta=mpf(1), gamma=mpf(0), c=(mpf(0),))], 4, ctx)


def test_constraint_residuals_of_pure_exponential(ctx):
    with ctx.scope():
        gamma = mpf(2)
        c = tuple(gamma**p / mpmath.factorial(p) for p in range(1, 5))
        assert all(abs(r) < ctx.tolerance for r in constraint_residuals(gamma, c, 4, ctx))
        r = constraint_residuals(gamma, (mpf(0),) * 4, 4, ctx)
        assert abs(r[0] + 2) < ctx.tolerance
        assert abs(r[1] - 2) < ctx.tolerance


def test_asymptotic_error_shrinks_like_eps_to_the_fifth(ctx, capparelli, capparelli_base):
    datum = capparelli.datum((0, 0), C="-1/24")
    profile = build_profile(datum, 4, ctx, capparelli_base)
    with ctx.scope():
        errors = []
        for eps in (mpf("0.1"), mpf("0.05")):
            exact = nahm_numeric(datum, eps, ctx)
            errors.append(abs(asymptotic_eval(profile, eps, ctx) / exact - 1))
        assert 16 < errors[0] / errors[1] < 64


def test_sum_and_product_agree_numerically(ctx, corpus):
    identity = corpus.identity("kr-1")
    (datum,) = identity.sum_sides[0]
    with ctx.scope():
        eps = mpf("0.5")
        ratio = nahm_numeric(datum, eps, ctx) / product_numeric(identity.product, eps, ctx)
        assert abs(ratio - 1) < ctx.tolerance


def test_profile_preconditions(ctx, capparelli, capparelli_base, mod9_base):
    restricted = NahmDatum.create(A=[[2, 3], [3, 6]], B=[1, 4], J=[1, 3], lower=[0, 1])
    with pytest.raises(ValidationError):
        build_profile(restricted, 4, ctx)
    with pytest.raises(ValidationError):
        build_profile(capparelli.datum((0, 0)), 0, ctx, capparelli_base)
    with pytest.raises(ValidationError):
        build_profile(capparelli.datum((0, 0)), 4, ctx, mod9_base)
    with pytest.raises(ValidationError):
        term_constants(capparelli_base, (Fraction(0),), 4, ctx)
    profile = build_profile(capparelli.datum((0, 0)), 1, ctx, capparelli_base)
    with pytest.raises(ValidationError):
        asymptotic_eval(profile, mpf(0), ctx)


def test_profile_record_is_decimal_strings(ctx, capparelli, capparelli_base):
    record = profile_record(build_profile(capparelli.datum((0, 0)), 2, ctx, capparelli_base), ctx)
    assert record["P"] == 2
    assert len(record["c"]) == 2
    assert float(record["xi"][0]) == pytest.approx(3)
    assert float(record["detAtilde"]) == pytest.approx(216)


@pytest.mark.parametrize("digits", [60, 120])
def test_rogers_ramanujan_residuals_follow_working_precision(digits):
    ctx = PrecisionContext(digits)
    profile = build_profile(NahmDatum.create(A=[[2]], C="-1/60"), 4, ctx)
    result = modularity_residuals([profile.term], 4, ctx)
    bound = ctx.power_of_ten(-(digits - 15))
    assert all(abs(r) < bound for r in result.residuals())
    with ctx.scope():
        assert abs(solve_C(profile, ctx) + mpf(1) / 60) < ctx.tolerance


def test_constants_agree_across_precisions(ctx, mod9):
    fine = PrecisionContext(120)
    low = build_profile(mod9.datum((0, 0)), 4, ctx)
    high = build_profile(mod9.datum((0, 0)), 4, fine, build_base(mod9.A, mod9.J, fine))
    with fine.scope():
        for a, b in zip(low.c, high.c, strict=True):
            assert abs(a - b) < ctx.tolerance
        assert abs(low.beta - high.beta) < ctx.tolerance
    result = modularity_residuals([high.term], 4, fine)
    assert all(abs(r) < fine.power_of_ten(-90) for r in result.residuals())


def test_rogers_ramanujan_beta_matches_product(ctx):
    # the product over n = +-1 mod 5 grows like e^(pi^2/15eps) / (2 sin(pi/5))
    profile = build_profile(NahmDatum.create(A=[[2]], C="-1/60"), 4, ctx)
    with ctx.scope():
        assert abs(profile.beta - 1 / (2 * mpmath.sin(mpmath.pi / 5))) < ctx.tolerance
        assert abs(profile.alpha - mpmath.pi**2 / 15) < ctx.tolerance


def test_beta_carries_sqrt_of_steps(ctx, capparelli_base):
    term = term_constants(capparelli_base, (Fraction(0), Fraction(0)), 2, ctx)
    with ctx.scope():
        Q = capparelli_base.Q
        expected = mpmath.sqrt(3) / mpmath.sqrt(216 * (1 - Q[0]) * (1 - Q[1] ** 3))
        assert abs(term.beta - expected) < ctx.tolerance


def test_expansion_tracks_the_sum(ctx, capparelli, capparelli_base):
    datum = capparelli.datum((0, 0), C=str(capparelli_c_formula(0, 0)))
    profile = build_profile(datum, 4, ctx, capparelli_base)
    with ctx.scope():
        eps = mpf("0.05")
        ratio = asymptotic_eval(profile, eps, ctx) / nahm_numeric(datum, eps, ctx)
        assert abs(ratio - 1) < mpf(10) ** -5


def test_shifting_C_moves_only_the_linear_coefficient(ctx, capparelli, capparelli_base):
    base = build_profile(capparelli.datum((1, 0)), 4, ctx, capparelli_base)
    moved = build_profile(capparelli.datum((1, 0), C="5/7"), 4, ctx, capparelli_base)
    assert moved.c == base.c
    first = modularity_residuals([base.term], 4, ctx)
    second = modularity_residuals([moved.term], 4, ctx)
    with ctx.scope():
        assert abs(second.cstar - first.cstar + mpf(5) / 7) < ctx.tolerance
        for a, b in zip(first.residuals(), second.residuals(), strict=True):
            assert abs(a - b) < ctx.tolerance


def test_single_term_residuals_match_closed_forms(ctx):
    rng = random.Random(11)
    with ctx.scope():
        for _ in range(20):
            gamma = mpf(rng.randint(-500, 500)) / 97
            c1, c2, c3, c4 = (mpf(rng.randint(-500, 500)) / 89 for _ in range(4))
            term = TermAsymptotics(beta=mpf(rng.randint(1, 9)), gamma=gamma, c=(c1, c2, c3, c4))
            L = modularity_residuals([term], 4, ctx).L
            expected = (
                c1 - gamma,
                c2 - c1**2 / 2,
                c3 - c1 * c2 + c1**3 / 3,
                c4 - c1 * c3 - c2**2 / 2 + c1**2 * c2 - c1**4 / 4,
            )
            assert all(abs(a - b) < ctx.tolerance for a, b in zip(L, expected, strict=True))


def test_log_coefficients_vanish_with_the_constraint_forms(ctx):
    rng = random.Random(5)
    with ctx.scope():
        for _ in range(20):
            gamma = mpf(rng.randint(-300, 300)) / 53
            c = [gamma**p / mpmath.factorial(p) for p in range(1, 5)]
            term = TermAsymptotics(beta=mpf(1), gamma=gamma, c=tuple(c))
            assert all(abs(x) < ctx.tolerance for x in modularity_residuals([term], 4, ctx).L)
            assert all(abs(r) < ctx.tolerance for r in constraint_residuals(gamma, c, 4, ctx))
            p = rng.randint(1, 4)
            c[p - 1] += mpf(rng.randint(1, 50)) / 7
            term = TermAsymptotics(beta=mpf(1), gamma=gamma, c=tuple(c))
            L = modularity_residuals([term], 4, ctx).L
            r = constraint_residuals(gamma, c, 4, ctx)
            assert all(abs(x) < ctx.tolerance for x in L[: p - 1] + r[: p - 1])
            assert abs(L[p - 1]) > 0.1 and abs(r[p - 1]) > 0.1
