import pytest

from qseries.nahm import expand_sum_side
from qseries.partitions import CONDITIONS, enumerate_condition_partitions
from qseries.products import pochhammer_inv
from utils.exceptions import ValidationError

ORACLE_ORDER = 40


@pytest.mark.parametrize("name", ["cap1", "cap2", "kr-1", "kr-2", "kr-3", "kr-4", "kr-5"])
def test_partition_counts_match_sum_sides(corpus, name):
    identity = corpus.identity(name)
    oracle = enumerate_condition_partitions(identity.condition, ORACLE_ORDER)
    for side in identity.sum_sides:
        assert expand_sum_side(side, ORACLE_ORDER) == oracle


def test_capparelli_small_counts():
    # n=6: 6, 4+2 (sum 6 is a multiple of 6); n=9: 9, 7+2, 6+3 (gap 3 between multiples of 3)
    counts = enumerate_condition_partitions("cap-1", 10).coefficients()
    assert counts[:10] == [1, 0, 1, 1, 1, 1, 2, 1, 2, 3]


@pytest.mark.parametrize("name", ["cap1", "cap2"])
def test_capparelli_counts_match_products(corpus, name):
    identity = corpus.identity(name)
    oracle = enumerate_condition_partitions(identity.condition, ORACLE_ORDER)
    assert oracle == pochhammer_inv(identity.product, ORACLE_ORDER)


def test_every_condition_is_registered():
    assert set(CONDITIONS) == {"cap-1", "cap-2", "kr-1", "kr-2", "kr-3", "kr-4", "kr-5"}


def test_enumeration_bounds():
    with pytest.raises(ValidationError):
        enumerate_condition_partitions("kr-9", 10)
    with pytest.raises(ValidationError):
        enumerate_condition_partitions("kr-1", 81)


def test_larger_smallest_part_only_removes_partitions():
    wide = enumerate_condition_partitions("kr-1", ORACLE_ORDER).coefficients()
    narrow = enumerate_condition_partitions("kr-2", ORACLE_ORDER).coefficients()
    assert all(n <= w for n, w in zip(narrow, wide, strict=True))
    assert narrow[1] == 0 < wide[1]
