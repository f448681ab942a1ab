from fractions import Fraction

import pytest

from asymptotics.datum import NahmDatum
from utils.exceptions import ValidationError


def test_from_dict_parses_rational_strings():
    datum = NahmDatum.from_dict({"A": [[2, 3], [3, 6]], "B": ["1/2", 0], "C": "-1/24", "J": [1, 3]})
    assert datum.B == (Fraction(1, 2), Fraction(0))
    assert datum.C == Fraction(-1, 24)
    assert datum.lower == (0, 0)
    assert NahmDatum.from_dict(datum.to_dict()) == datum


def test_missing_matrix_is_reported():
    with pytest.raises(ValidationError):
        NahmDatum.from_dict({"B": [0]})


@pytest.mark.parametrize(
    "kwargs",
    [
        {"A": []},
        {"A": [[1, 2], [3, 4]]},
        {"A": [[2]], "B": [0, 0]},
        {"A": [[2]], "J": [0]},
        {"A": [[2]], "lower": [-1]},
    ],
)
def test_shape_and_sign_checks(kwargs):
    with pytest.raises(ValidationError):
        NahmDatum.create(**kwargs)


def test_positive_definiteness():
    assert NahmDatum.create(A=[[4, 6], [6, 12]]).is_positive_definite()
    assert not NahmDatum.create(A=[[1, 2], [2, 1]]).is_positive_definite()
    assert not NahmDatum.create(A=[[1, 0], [0, 0]]).is_positive_definite()


def test_exponent():
    datum = NahmDatum.create(A=[[4, 6], [6, 12]], B=[1, 0], C=2)
    # 2 n1^2 + 6 n1 n2 + 6 n2^2 + n1 + 2
    assert datum.exponent((1, 1)) == 17
    assert datum.with_C(0).exponent((0, 0)) == 0


def test_lattice_points_are_complete():
    datum = NahmDatum.create(A=[[2, 3], [3, 6]], B=[1, 3])
    bound = 30
    found = {n for n, _ in datum.lattice_points(bound)}
    brute = {
        (a, b) for a in range(40) for b in range(40) if datum.exponent((a, b)) <= bound
    }
    assert found == brute


def test_lattice_points_respect_lower_bounds():
    datum = NahmDatum.create(A=[[2, 3], [3, 6]], B=[1, 4], lower=[0, 1])
    assert all(n[1] >= 1 for n, _ in datum.lattice_points(20))
    assert list(NahmDatum.create(A=[[2]], C=5).lattice_points(3)) == []
