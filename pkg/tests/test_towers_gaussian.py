import random

import mpmath
import pytest
from mpmath import mpf

from asymptotics.gaussian import GaussianMoments, gaussian_moment
from asymptotics.towers import HalfEpsSeries, TPolynomial, c_tower, d_tower
from utils.exceptions import ValidationError


def test_one_dimensional_moments(ctx):
    moments = GaussianMoments(mpmath.matrix([[mpf(5)]]), ctx)
    with ctx.scope():
        assert abs(moments.moment((2,)) - mpf(1) / 5) < ctx.tolerance
        assert abs(moments.moment((4,)) - mpf(3) / 25) < ctx.tolerance
        assert abs(moments.moment((6,)) - mpf(15) / 125) < ctx.tolerance
    assert moments.moment((3,)) == 0


def test_correlated_moments(ctx):
    Atilde = mpmath.matrix([[2, 1], [1, 2]])
    with ctx.scope():
        assert abs(gaussian_moment(Atilde, (1, 1), ctx) + mpf(1) / 3) < ctx.tolerance
        assert abs(gaussian_moment(Atilde, (2, 0), ctx) - mpf(2) / 3) < ctx.tolerance
        # E[t1^2 t2^2] = s11 s22 + 2 s12^2
        assert abs(gaussian_moment(Atilde, (2, 2), ctx) - mpf(2) / 3) < ctx.tolerance
    assert gaussian_moment(Atilde, (2, 1), ctx) == 0


def test_expectation_of_polynomial(ctx):
    moments = GaussianMoments(mpmath.matrix([[mpf(2)]]), ctx)
    poly = TPolynomial(1, {(0,): mpf(1), (1,): mpf(7), (2,): mpf(4)})
    with ctx.scope():
        assert abs(moments.expectation(poly) - 3) < ctx.tolerance


def test_covariance_must_be_positive_definite(ctx):
    with pytest.raises(ValidationError):
        GaussianMoments(mpmath.matrix([[1, 2], [2, 1]]), ctx)
    with pytest.raises(ValidationError):
        GaussianMoments(mpmath.matrix([[mpf(1)]]), ctx).moment((1, 1))


def test_exp_of_linear_term(ctx):
    a = mpf(3)
    series = HalfEpsSeries(1, [TPolynomial(1), TPolynomial.constant(1, a)] + [TPolynomial(1)] * 4)
    with ctx.scope():
        result = series.exp()
        for n in range(6):
            expected = a**n / mpmath.factorial(n)
            assert abs(result[n].coefficient((0,)) - expected) < ctx.tolerance
    with pytest.raises(ValueError):
        HalfEpsSeries.one(1, 3).exp()


def test_d_tower_leading_terms(ctx, mod9_base):
    B, J = 1, 3
    tower = d_tower(1, B, mod9_base.xi[1], J, mod9_base.Q[1], 2, ctx)
    assert tower.order == 4
    assert tower[0].coefficient((0,)) == 1
    with ctx.scope():
        assert abs(tower[1].coefficient((1,)) - (B + mod9_base.xi[1] / 2)) < ctx.tolerance
    # the eps^(1/2) coefficient is odd in t
    assert tower[1].degrees() == {1, 3}


def test_c_tower_multiplies_axes(ctx, capparelli_base):
    towers = [
        d_tower(i, 0, capparelli_base.xi[i], J, capparelli_base.Q[i], 1, ctx)
        for i, J in enumerate((1, 3))
    ]
    combined = c_tower(towers, 1)
    with ctx.scope():
        expected = towers[0][1].coefficient((1,)) * towers[1][1].coefficient((1,))
        assert abs(combined[2].coefficient((1, 1)) - expected) < ctx.tolerance


def test_moments_match_quadrature(ctx):
    rng = random.Random(3)
    for _ in range(3):
        a11, a22 = rng.randint(2, 6), rng.randint(2, 6)
        a12 = mpf(rng.randint(-9, 9)) / 10
        Atilde = mpmath.matrix([[a11, a12], [a12, a22]])
        moments = GaussianMoments(Atilde, ctx)
        with mpmath.workdps(20):
            norm = mpmath.sqrt(a11 * a22 - a12**2) / (2 * mpmath.pi)
            for m in ((1, 1), (2, 2), (3, 1), (4, 0)):

                def density(x, y, m=m):
                    quadratic = a11 * x**2 + 2 * a12 * x * y + a22 * y**2
                    return x ** m[0] * y ** m[1] * mpmath.exp(-quadratic / 2)

                inf = mpmath.inf
                numeric = norm * mpmath.quad(density, [-inf, 0, inf], [-inf, 0, inf])
                assert abs(moments.moment(m) - numeric) < mpf(10) ** -12
