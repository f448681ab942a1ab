from fractions import Fraction

import mpmath
import pytest

from search.checks import (
    alpha_crosscheck,
    capparelli_c_formula,
    capparelli_residual_polys,
    dilog_check,
    minimal_poly_check,
)
from utils.exceptions import ValidationError


def test_capparelli_c_formula_values():
    assert capparelli_c_formula(0, 0) == Fraction(-1, 24)
    assert capparelli_c_formula(1, 0) == Fraction(1, 12)
    assert capparelli_c_formula(0, 1) == Fraction(1, 108)
    assert capparelli_c_formula(4, 6) == Fraction(19, 12)


def test_residual_polynomials_vanish_at_the_origin():
    assert capparelli_residual_polys(0, 0) == (0, 0, 0)
    # B = (1, 0) already satisfies the third constraint
    first, second, _ = capparelli_residual_polys(1, 0)
    assert first == Fraction(-21, 1152)
    assert second == 0


@pytest.mark.parametrize("name", ["cap", "mod9"])
def test_dilogarithm_identities(ctx, name):
    assert dilog_check(name, ctx) < ctx.tolerance


def test_dilogarithm_wrong_target(ctx):
    with ctx.scope():
        assert dilog_check("cap", ctx, target=mpmath.pi**2 / 17) > mpmath.mpf("1e-3")
    with pytest.raises(ValidationError):
        dilog_check("rr", ctx)


def test_minimal_polynomials(ctx):
    report = minimal_poly_check(ctx)
    assert report.passed
    assert len(report.residuals) == 10
    assert {r.family for r in report.residuals} == {"mod9", "capparelli"}


def test_cubics_with_the_wrong_constant_fail(ctx, mod9_base):
    with ctx.scope():
        Q1, x = mod9_base.Q[0], mod9_base.xi[0]
        assert abs(x - 2 * mpmath.cos(mpmath.pi / 9)) < ctx.tolerance
        assert abs(Q1**3 - 3 * Q1**2 - 1 + 2) < ctx.tolerance
        # x^3 - 3x^2 - 1 = 3x(1 - x) on the root of x^3 - 3x - 1
        assert abs(x**3 - 3 * x**2 - 1 - 3 * x * (1 - x)) < ctx.tolerance
        assert abs(x**3 - 3 * x**2 - 1) > 4


def test_alpha_crosscheck(ctx, capparelli, mod9):
    for family in (capparelli, mod9):
        check = alpha_crosscheck(family, ctx)
        assert check.difference < ctx.tolerance
