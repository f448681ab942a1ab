import pytest

from asymptotics.datum import NahmDatum
from qseries.bivariate import (
    BivariateSeries,
    nahm_expand_bivariate,
    staircase_x_order,
    x_pochhammer,
)
from qseries.nahm import expand_sum_side
from utils.exceptions import ValidationError

Q_ORDER = 40


def test_euler_reciprocal_identity():
    # 1/(x; q)_inf = sum x^n / (q; q)_n
    lhs = x_pochhammer(1, 1, 0, 1, 8, 30, invert=True)
    rhs = nahm_expand_bivariate(NahmDatum.create(A=[[0]]), (1,), 8, 30)
    assert lhs == rhs


def test_euler_product_identity():
    # (-x; q)_inf = sum x^n q^(n(n-1)/2) / (q; q)_n
    lhs = x_pochhammer(-1, 1, 0, 1, 8, 30)
    rhs = nahm_expand_bivariate(NahmDatum.create(A=[[1]], B=["-1/2"]), (1,), 8, 30)
    assert lhs == rhs


def test_factor_and_inverse_cancel():
    series = x_pochhammer(-1, 1, 2, 1, 5, 20)
    assert series.times_factor(3, 2, 1).times_factor(3, 2, 1, invert=True) == series
    with pytest.raises(ValidationError):
        series.times_factor(1, 0, 0)


def test_staircase_x_order():
    assert staircase_x_order(3, 40) == 5
    assert staircase_x_order(1, 0) == 1
    assert staircase_x_order(3, 2) == 1


def test_staircase_insert_lifts_rows():
    series = BivariateSeries.from_terms({(0, 0): 1, (1, 1): 2, (2, 0): 5, (3, 0): 7}, 3, 6)
    lifted = series.staircase_insert(2)
    assert lifted.column(1).coefficients()[1] == 2
    assert lifted.column(2).coefficients()[2] == 5
    assert lifted.column(3).coefficients()[6] == 7
    assert lifted.eval_x1().coefficients() == [1, 2, 5, 0, 0, 0, 7]
    with pytest.raises(ValidationError):
        series.staircase_insert(0)


def _capparelli_generating_sums(x_order):
    # x counts n1 + 2 n2; after lifting by 3 m(m-1)/2 the quadratic form becomes the Capparelli one
    base = NahmDatum.create(A=[[1, 0], [0, 0]], B=["5/2", 3], J=[1, 3])
    first = nahm_expand_bivariate(base, (1, 2), x_order, Q_ORDER) + nahm_expand_bivariate(
        base.with_C(2), (1, 2), x_order, Q_ORDER, x_shift=1
    )
    second = nahm_expand_bivariate(base.with_B(["3/2", 3]), (1, 2), x_order, Q_ORDER)
    return first, second


def test_staircase_recovers_capparelli_sum_sides(corpus):
    x_order = staircase_x_order(3, Q_ORDER)
    first, second = _capparelli_generating_sums(x_order)
    cap1 = corpus.identity("cap1")
    cap1alt = corpus.identity("cap1alt")
    assert first.staircase_insert(3).eval_x1() == expand_sum_side(cap1alt.sum_sides[0], Q_ORDER)
    assert second.staircase_insert(3).eval_x1() == expand_sum_side(cap1.sum_sides[0], Q_ORDER)


def test_second_generating_sum_is_a_product():
    x_order = staircase_x_order(3, Q_ORDER)
    _, second = _capparelli_generating_sums(x_order)
    product = x_pochhammer(-1, 1, 2, 1, x_order, Q_ORDER) * x_pochhammer(
        1, 2, 3, 3, x_order, Q_ORDER, invert=True
    )
    assert second == product


def test_bivariate_validation():
    with pytest.raises(ValidationError):
        BivariateSeries(((1, 2), (3,)))
    with pytest.raises(ValidationError):
        nahm_expand_bivariate(NahmDatum.create(A=[[0]]), (0,), 3, 3)
    with pytest.raises(ValidationError):
        x_pochhammer(1, 0, 0, 1, 3, 3)
