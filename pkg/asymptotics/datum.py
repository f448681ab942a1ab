"""Nahm-type sum data and lattice enumeration."""

import math
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any

import sympy

from numerics.precision import as_fraction
from utils.exceptions import ValidationError

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def _rational(x: Fraction | int) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _fraction_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class NahmDatum:
    """One sum  sum_{n >= lower} q^(n^T A n / 2 + n^T B + C) / prod (q^J_i; q^J_i)_{n_i}."""

    A: Matrix
    B: Vector
    C: Fraction
    J: tuple[int, ...]
    lower: tuple[int, ...]

    def __post_init__(self) -> None:
        """Coerce to exact types and check shapes."""
        A = _fraction_matrix(self.A)
        k = len(A)
        if k == 0 or any(len(row) != k for row in A):
            raise ValidationError(f"A must be a nonempty square matrix, got {len(A)} rows")
        if any(A[i][j] != A[j][i] for i in range(k) for j in range(k)):
            raise ValidationError("A must be symmetric")
        B = tuple(as_fraction(b) for b in self.B)
        J = tuple(int(j) for j in self.J)
        lower = tuple(int(x) for x in self.lower)
        if len(B) != k or len(J) != k or len(lower) != k:
            raise ValidationError(f"B, J and lower must all have length {k}")
        if any(j < 1 for j in J):
            raise ValidationError(f"J entries must be positive integers, got {J}")
        if any(x < 0 for x in lower):
            raise ValidationError(f"support lower bounds must be >= 0, got {lower}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", as_fraction(self.C))
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "lower", lower)

    @classmethod
    def create(
        cls,
        A: Sequence[Sequence[Any]],
        B: Sequence[Any] | None = None,
        C: Any = 0,
        J: Sequence[int] | None = None,
        lower: Sequence[int] | None = None,
    ) -> "NahmDatum":
        """Build a datum with zero B, unit J and zero lower bounds by default."""
        k = len(A)
        return cls(
            A=A,
            B=tuple(B) if B is not None else (0,) * k,
            C=C,
            J=tuple(J) if J is not None else (1,) * k,
            lower=tuple(lower) if lower is not None else (0,) * k,
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "NahmDatum":
        """Parse ``{A, B, C, J, lower}`` with rationals given as ints or ``"p/q"`` strings."""
        try:
            return cls.create(
                A=data["A"],
                B=data.get("B"),
                C=data.get("C", 0),
                J=data.get("J"),
                lower=data.get("lower"),
            )
        except KeyError as e:
            raise ValidationError(f"datum is missing field {e}") from e

    def to_dict(self) -> dict[str, Any]:
        """Serialize with rationals as strings."""
        return {
            "A": [[str(x) for x in row] for row in self.A],
            "B": [str(b) for b in self.B],
            "C": str(self.C),
            "J": list(self.J),
            "lower": list(self.lower),
        }

    @property
    def k(self) -> int:
        """Number of summation variables."""
        return len(self.A)

    def with_B(self, B: Sequence[Any]) -> "NahmDatum":
        """Copy with a different linear term."""
        return replace(self, B=tuple(B))

    def with_C(self, C: Any) -> "NahmDatum":
        """Copy with a different additive constant."""
        return replace(self, C=C)

    @property
    def has_restricted_support(self) -> bool:
        """Whether any variable starts above zero."""
        return any(self.lower)

    @cached_property
    def _sympy_A(self) -> sympy.Matrix:
        return sympy.Matrix([[_rational(x) for x in row] for row in self.A])

    def is_positive_definite(self) -> bool:
        """Sylvester's criterion on exact leading principal minors."""
        M = self._sympy_A
        return all(M[:i, :i].det() > 0 for i in range(1, self.k + 1))

    def require_positive_definite(self) -> None:
        """Raise ValidationError unless A is positive definite."""
        if not self.is_positive_definite():
            raise ValidationError("A must be positive definite", details=str(self.A))

    def exponent(self, n: Sequence[int]) -> Fraction:
        """The q-exponent n^T A n / 2 + n^T B + C of the term at n."""
        k = self.k
        quad = sum(self.A[i][j] * n[i] * n[j] for i in range(k) for j in range(k))
        return quad / 2 + sum(self.B[i] * n[i] for i in range(k)) + self.C

    def axis_bounds(self, bound: Fraction | int) -> tuple[int, ...]:
        """Per-axis maxima of n_i over the region where the exponent is <= bound.

        Completing the square, exponent >= m_i^2 / (2 (A^-1)_ii) + C - B^T A^-1 B / 2
        with m = n + A^-1 B, which bounds every coordinate independently.
        """
        self.require_positive_definite()
        inv = self._sympy_A.inv()
        Bv = sympy.Matrix([_rational(b) for b in self.B])
        center = inv * Bv
        shift = (Bv.T * inv * Bv)[0, 0] / 2
        slack = _rational(bound) - _rational(self.C) + shift
        bounds = []
        for i in range(self.k):
            if slack < 0:
                bounds.append(self.lower[i] - 1)
                continue
            radius_sq = 2 * inv[i, i] * slack
            radius = math.isqrt(int(sympy.floor(radius_sq))) + 1
            bounds.append(int(sympy.floor(-center[i])) + radius + 1)
        return tuple(bounds)

    def lattice_points(self, bound: Fraction | int) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """All (n, exponent) with n >= lower and exponent <= bound, in lexicographic order."""
        upper = self.axis_bounds(bound)
        ranges = [range(self.lower[i], upper[i] + 1) for i in range(self.k)]
        for n in product(*ranges):
            e = self.exponent(n)
            if e <= bound:
                yield n, e
