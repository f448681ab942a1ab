"""Series in x and q, truncated in both variables, and the staircase transform."""

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product

from asymptotics.datum import NahmDatum
from qseries.nahm import InversePochhammerTable, integer_exponent
from qseries.series import QSeriesTrunc
from utils.exceptions import ValidationError


@dataclass(frozen=True)
class BivariateSeries:
    """sum a[m][n] x^m q^n for 0 <= m <= x_order, 0 <= n <= q_order."""

    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        """Check the truncation is rectangular."""
        if not self.coeffs or not self.coeffs[0]:
            raise ValidationError("a bivariate series needs at least one coefficient")
        width = len(self.coeffs[0])
        if any(len(row) != width for row in self.coeffs):
            raise ValidationError("bivariate coefficients must form a rectangle")

    @classmethod
    def zero(cls, x_order: int, q_order: int) -> "BivariateSeries":
        """The zero series."""
        return cls(tuple((0,) * (q_order + 1) for _ in range(x_order + 1)))

    @classmethod
    def one(cls, x_order: int, q_order: int) -> "BivariateSeries":
        """The constant series 1."""
        return cls.from_terms({(0, 0): 1}, x_order, q_order)

    @classmethod
    def from_terms(
        cls, terms: dict[tuple[int, int], int], x_order: int, q_order: int
    ) -> "BivariateSeries":
        """Build from {(m, n): coefficient}; terms outside the rectangle are dropped."""
        rows = [[0] * (q_order + 1) for _ in range(x_order + 1)]
        for (m, n), value in terms.items():
            if m < 0 or n < 0:
                raise ValidationError(f"negative exponent ({m}, {n}) in bivariate terms")
            if m <= x_order and n <= q_order:
                rows[m][n] += value
        return cls(tuple(tuple(r) for r in rows))

    @property
    def x_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def q_order(self) -> int:
        return len(self.coeffs[0]) - 1

    def _rows(self) -> list[list[int]]:
        return [list(r) for r in self.coeffs]

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        """Termwise sum on the common rectangle."""
        M = min(self.x_order, other.x_order)
        N = min(self.q_order, other.q_order)
        return BivariateSeries(
            tuple(
                tuple(self.coeffs[m][n] + other.coeffs[m][n] for n in range(N + 1))
                for m in range(M + 1)
            )
        )

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        """Product truncated to the common rectangle."""
        M = min(self.x_order, other.x_order)
        N = min(self.q_order, other.q_order)
        out = [[0] * (N + 1) for _ in range(M + 1)]
        for m1, n1 in product(range(M + 1), range(N + 1)):
            a = self.coeffs[m1][n1]
            if not a:
                continue
            for m2 in range(M + 1 - m1):
                row = other.coeffs[m2]
                target = out[m1 + m2]
                for n2 in range(N + 1 - n1):
                    if row[n2]:
                        target[n1 + n2] += a * row[n2]
        return BivariateSeries(tuple(tuple(r) for r in out))

    def times_factor(
        self, c: int, x_power: int, q_power: int, invert: bool = False
    ) -> "BivariateSeries":
        """Multiply by (1 - c x^s q^e), or divide by it when ``invert``."""
        if x_power < 0 or q_power < 0 or (x_power == 0 and q_power == 0):
            raise ValidationError(f"factor 1 - c x^{x_power} q^{q_power} must be a proper monomial")
        a = self._rows()
        M, N = self.x_order, self.q_order
        if invert:
            for m in range(x_power, M + 1):
                for n in range(q_power, N + 1):
                    a[m][n] += c * a[m - x_power][n - q_power]
        else:
            for m in range(M, x_power - 1, -1):
                for n in range(N, q_power - 1, -1):
                    a[m][n] -= c * a[m - x_power][n - q_power]
        return BivariateSeries(tuple(tuple(r) for r in a))

    def column(self, m: int) -> QSeriesTrunc:
        """Coefficient of x^m as a q-series."""
        return QSeriesTrunc(self.coeffs[m])

    def staircase_insert(self, step: int) -> "BivariateSeries":
        """Map a x^m q^n to a x^m q^(step m(m-1)/2 + n), dropping what passes q_order."""
        if step < 1:
            raise ValidationError(f"staircase step must be >= 1, got {step}")
        N = self.q_order
        rows = []
        for m, row in enumerate(self.coeffs):
            lift = step * m * (m - 1) // 2
            rows.append(tuple([0] * min(lift, N + 1) + list(row[: max(N + 1 - lift, 0)])))
        return BivariateSeries(tuple(rows))

    def eval_x1(self) -> QSeriesTrunc:
        """Set x = 1: column sums over m."""
        return QSeriesTrunc(tuple(sum(col) for col in zip(*self.coeffs, strict=True)))


def staircase_x_order(step: int, q_order: int) -> int:
    """Largest m whose staircase lift step m(m-1)/2 still fits below q^(q_order + 1)."""
    m = 0
    while step * (m + 1) * m // 2 <= q_order:
        m += 1
    return m


def x_pochhammer(
    c: int,
    x_power: int,
    q_start: int,
    q_step: int,
    x_order: int,
    q_order: int,
    invert: bool = False,
) -> BivariateSeries:
    """(c x^s q^a; q^b)_inf = prod_t (1 - c x^s q^(a + t b)), or its reciprocal."""
    if q_step < 1:
        raise ValidationError(f"q_step must be >= 1, got {q_step}")
    series = BivariateSeries.one(x_order, q_order)
    for power in range(q_start, q_order + 1, q_step):
        if x_power == 0 and power == 0:
            raise ValidationError("factor (1 - c) has no x or q dependence")
        if x_power > x_order:
            break
        series = series.times_factor(c, x_power, power, invert=invert)
    return series


def nahm_expand_bivariate(
    datum: NahmDatum,
    x_weights: Sequence[int],
    x_order: int,
    q_order: int,
    x_shift: int = 0,
) -> BivariateSeries:
    """sum_n x^(w.n + shift) q^(exponent(n)) / prod (q^J_i; q^J_i)_{n_i}.

    A only needs to be positive semidefinite here: the x-degree bound makes
    the sum finite, so every weight must be positive.
    """
    if len(x_weights) != datum.k or any(w < 1 for w in x_weights):
        raise ValidationError(f"need {datum.k} positive x weights, got {tuple(x_weights)}")
    table = InversePochhammerTable(q_order)
    rows = [[0] * (q_order + 1) for _ in range(x_order + 1)]
    budget = x_order - x_shift
    ranges = [range(datum.lower[i], budget // x_weights[i] + 1) for i in range(datum.k)]
    for n in product(*ranges):
        m = x_shift + sum(w * ni for w, ni in zip(x_weights, n, strict=True))
        if m > x_order:
            continue
        exponent = datum.exponent(n)
        if exponent > q_order:
            continue
        e = integer_exponent(exponent, n)
        term = QSeriesTrunc.one(q_order).shift(e)
        for J_i, n_i in zip(datum.J, n, strict=True):
            if n_i:
                term = term * table.get(J_i, n_i)
        for idx, value in enumerate(term.coefficients()):
            rows[m][idx] += value
    return BivariateSeries(tuple(tuple(r) for r in rows))
