"""Solve the system 1 - Q_i^J_i = prod_j Q_j^A_ji on the open unit cube."""

from collections.abc import Sequence
from fractions import Fraction
from itertools import product

import mpmath
import numpy as np
from mpmath import mpf

from numerics.precision import PrecisionContext
from utils.exceptions import ComputationError, NotUniqueError, NoSolutionError, ValidationError
from utils.logging import get_logger

logger = get_logger(__name__)

START_GRID = tuple(i / 10 for i in range(1, 10))
MAX_ITERATIONS = 200
FLOAT_TOLERANCE = 1e-12
DISTINCT_SEPARATION = 1e-10

Matrix = Sequence[Sequence[Fraction]]


def _residual(Q: np.ndarray, A: np.ndarray, J: np.ndarray) -> np.ndarray:
    return np.log1p(-(Q**J)) - A.T @ np.log(Q)


def _jacobian(Q: np.ndarray, A: np.ndarray, J: np.ndarray) -> np.ndarray:
    QJ = Q**J
    diag = -J * QJ / (Q * (1 - QJ))
    return np.diag(diag) - A.T / Q[np.newaxis, :]


def _damped_newton(start: np.ndarray, A: np.ndarray, J: np.ndarray) -> np.ndarray | None:
    """Float Newton from one start.

    The step is halved until it stays inside the cube and lowers the residual.
    """
    Q = start.copy()
    norm = np.linalg.norm(_residual(Q, A, J))
    for _ in range(MAX_ITERATIONS):
        if norm < FLOAT_TOLERANCE:
            return Q
        try:
            step = np.linalg.solve(_jacobian(Q, A, J), -_residual(Q, A, J))
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        while scale > 1e-12:
            trial = Q + scale * step
            if np.all(trial > 0) and np.all(trial < 1):
                trial_norm = np.linalg.norm(_residual(trial, A, J))
                if trial_norm < norm:
                    Q, norm = trial, trial_norm
                    break
            scale /= 2
        else:
            return None
    return Q if norm < FLOAT_TOLERANCE else None


def _distance(a: Sequence, b: Sequence) -> float:
    return max(abs(float(x) - float(y)) for x, y in zip(a, b, strict=True))


def _distinct(roots: list, separation: float) -> list:
    kept: list = []
    for root in roots:
        if all(_distance(root, other) > separation for other in kept):
            kept.append(root)
    return kept


def q_system_residual(Q: Sequence[mpf], A: Matrix, J: Sequence[int], ctx: PrecisionContext) -> mpf:
    """max_i |ln(1 - Q_i^J_i) - sum_j A_ji ln Q_j|."""
    with ctx.scope():
        k = len(Q)
        return max(
            abs(
                mpmath.log(1 - Q[i] ** J[i])
                - sum(ctx.real(A[j][i]) * mpmath.log(Q[j]) for j in range(k))
            )
            for i in range(k)
        )


def _refine(
    root: Sequence[float | mpf], A: Matrix, J: Sequence[int], digits: int
) -> tuple[mpf, ...]:
    k = len(J)
    with mpmath.workdps(digits):
        A_mp = [[mpf(x.numerator) / x.denominator for x in row] for row in A]

        def system(*Q):
            return [
                mpmath.log(1 - Q[i] ** J[i]) - sum(A_mp[j][i] * mpmath.log(Q[j]) for j in range(k))
                for i in range(k)
            ]

        def jacobian(*Q):
            rows = []
            for i in range(k):
                QJ = Q[i] ** J[i]
                rows.append(
                    [
                        (-J[i] * QJ / (Q[i] * (1 - QJ)) if i == m else 0) - A_mp[m][i] / Q[m]
                        for m in range(k)
                    ]
                )
            return rows

        solution = mpmath.findroot(
            system, [mpf(x) for x in root], solver="mdnewton", J=jacobian, verify=False, maxsteps=50
        )
        if isinstance(solution, mpmath.matrix):
            return tuple(solution[i] for i in range(k))
        return (mpf(solution),)


def solve_Q(A: Matrix, J: Sequence[int], ctx: PrecisionContext) -> tuple[mpf, ...]:
    """Unique root of the Q-system in (0, 1)^k at the context precision.

    Raises:
        NoSolutionError: If no start converges to a root in the cube
        NotUniqueError: If two roots separated by more than 1e-10 are found

    """
    k = len(J)
    if len(A) != k:
        raise ValidationError(f"A has {len(A)} rows but J has {k} entries")
    A_np = np.array([[float(x) for x in row] for row in A])
    J_np = np.array([float(j) for j in J])

    float_roots = []
    for start in product(START_GRID, repeat=k):
        root = _damped_newton(np.array(start), A_np, J_np)
        if root is not None:
            float_roots.append(root)
    candidates = _distinct(float_roots, DISTINCT_SEPARATION)
    logger.debug(
        f"Q-system prefilter: {len(float_roots)} converged starts, {len(candidates)} distinct"
    )
    if not candidates:
        raise NoSolutionError(
            "Q-system has no root in the open unit cube",
            details=(
                f"A={[[str(x) for x in row] for row in A]}, J={tuple(J)}, "
                f"starts={len(START_GRID) ** k}"
            ),
        )

    refined = []
    for root in candidates:
        try:
            half = _refine(root, A, J, ctx.digits // 2 + 10)
            full = _refine(half, A, J, ctx.digits + 20)
            with ctx.scope():
                full = tuple(+x for x in _polish(half, full))
            inside = all(0 < x < 1 for x in full)
        except (ZeroDivisionError, ValueError, TypeError) as e:
            logger.debug(f"Refinement from {root} failed: {e}")
            continue
        if inside:
            refined.append(full)
    roots = _distinct(refined, DISTINCT_SEPARATION)

    if not roots:
        raise NoSolutionError(
            "Q-system refinement left no root in the open unit cube", details=f"J={tuple(J)}"
        )
    if len(roots) > 1:
        listing = "; ".join(", ".join(mpmath.nstr(x, 15) for x in r) for r in roots)
        raise NotUniqueError(
            f"Q-system has {len(roots)} distinct roots in the unit cube", details=listing
        )

    Q = roots[0]
    residual = q_system_residual(Q, A, J, ctx)
    if residual >= ctx.tolerance:
        raise ComputationError(
            "Q-system root did not reach working precision",
            details=f"residual={mpmath.nstr(residual, 5)}",
        )
    logger.debug(f"Solved Q-system: Q=({', '.join(mpmath.nstr(x, 20) for x in Q)})")
    return Q


def _polish(half: tuple[mpf, ...], full: tuple[mpf, ...]) -> tuple[mpf, ...]:
    """Keep the full-precision root unless it drifted away from the half-precision one."""
    if _distance(half, full) > DISTINCT_SEPARATION:
        raise ValueError("refinement passes disagree")
    return full
