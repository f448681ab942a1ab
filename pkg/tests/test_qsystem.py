from fractions import Fraction

import mpmath
import pytest

from asymptotics.qsystem import q_system_residual, solve_Q
from utils.exceptions import NoSolutionError, ValidationError


def matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def test_one_variable_roots(ctx):
    (half,) = solve_Q(matrix([[1]]), [1], ctx)
    (golden,) = solve_Q(matrix([[2]]), [1], ctx)
    with ctx.scope():
        assert abs(half - mpmath.mpf(1) / 2) < ctx.tolerance
        assert abs(golden - (mpmath.sqrt(5) - 1) / 2) < ctx.tolerance


def test_capparelli_root(ctx):
    Q = solve_Q(matrix([[4, 6], [6, 12]]), [1, 3], ctx)
    with ctx.scope():
        assert abs(Q[0] - mpmath.mpf(3) / 4) < ctx.tolerance
        assert abs(Q[1] - 2 * mpmath.cbrt(3) ** -2) < ctx.tolerance


def test_mod9_root(ctx):
    Q = solve_Q(matrix([[2, 3], [3, 6]]), [1, 3], ctx)
    with ctx.scope():
        assert abs(Q[0] - (1 - 2 * mpmath.sin(mpmath.pi / 18))) < ctx.tolerance
        assert q_system_residual(Q, matrix([[2, 3], [3, 6]]), [1, 3], ctx) < ctx.tolerance


def test_no_root_in_the_unit_interval(ctx):
    # 1 - Q = 1/Q has no real solution
    with pytest.raises(NoSolutionError):
        solve_Q(matrix([[-1]]), [1], ctx)


def test_shape_mismatch(ctx):
    with pytest.raises(ValidationError):
        solve_Q(matrix([[2]]), [1, 3], ctx)
