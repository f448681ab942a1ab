from fractions import Fraction

import pytest

from asymptotics.datum import NahmDatum
from qseries.nahm import InversePochhammerTable, expand_sum_side, integer_exponent, nahm_expand
from qseries.products import ProductSpec, pochhammer_inv
from qseries.series import QSeriesTrunc
from utils.exceptions import ValidationError


def test_rogers_ramanujan_identities():
    first = nahm_expand(NahmDatum.create(A=[[2]]), 100)
    second = nahm_expand(NahmDatum.create(A=[[2]], B=[1]), 100)
    assert first == pochhammer_inv(ProductSpec(modulus=5, denominator=((1, 1), (4, 1))), 100)
    assert second == pochhammer_inv(ProductSpec(modulus=5, denominator=((2, 1), (3, 1))), 100)


def test_triangular_sum_is_distinct_partitions():
    series = nahm_expand(NahmDatum.create(A=[[1]], B=["1/2"]), 60)
    assert series == pochhammer_inv(ProductSpec(modulus=2, denominator=((1, 1),)), 60)


def test_restricted_support_drops_the_n_zero_term():
    full = nahm_expand(NahmDatum.create(A=[[2]]), 40)
    tail = nahm_expand(NahmDatum.create(A=[[2]], lower=[1]), 40)
    assert full - tail == QSeriesTrunc.one(40)


def test_capparelli_first_identity_to_q60(corpus):
    identity = corpus.identity("cap1")
    product = pochhammer_inv(identity.product, 60)
    for side in identity.sum_sides:
        assert expand_sum_side(side, 60) == product


def test_kr5_three_piece_sum_side(corpus):
    identity = corpus.identity("kr-5")
    side = identity.sum_sides[0]
    assert len(side) == 3
    assert expand_sum_side(side, 80) == pochhammer_inv(identity.product, 80)


def test_inverse_pochhammer_table():
    table = InversePochhammerTable(20)
    by_hand = QSeriesTrunc.one(20)
    for m in (3, 6, 9):
        by_hand = by_hand.times_one_minus_power(m, -1)
    assert table.get(3, 3) == by_hand
    assert table.get(1, 0) == QSeriesTrunc.one(20)


def test_non_integral_exponent_is_rejected():
    with pytest.raises(ValidationError):
        nahm_expand(NahmDatum.create(A=[[1]]), 10)
    with pytest.raises(ValidationError):
        integer_exponent(Fraction(-1), (0,))


def test_expansion_preconditions():
    with pytest.raises(ValidationError):
        nahm_expand(NahmDatum.create(A=[[1, 2], [2, 1]]), 10)
    with pytest.raises(ValidationError):
        nahm_expand(NahmDatum.create(A=[[2]], C="1/2"), 10)
    with pytest.raises(ValidationError):
        nahm_expand(NahmDatum.create(A=[[2]]), -1)
    with pytest.raises(ValidationError):
        expand_sum_side([], 10)
