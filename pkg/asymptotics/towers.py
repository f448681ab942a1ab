"""Polynomials in t and series in half powers of eps for the asymptotic correction terms."""

from collections.abc import Mapping, Sequence
from fractions import Fraction
from math import factorial

from mpmath import mpf

from numerics.bernoulli import bernoulli_poly
from numerics.polylog import polylog_neg
from numerics.precision import PrecisionContext

Monomial = tuple[int, ...]


class TPolynomial:
    """Finitely supported polynomial in t_1..t_k with Real coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, mpf] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, mpf] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, value: mpf | int = 1) -> "TPolynomial":
        return cls(nvars, {(0,) * nvars: mpf(value)})

    @classmethod
    def monomial(cls, nvars: int, exponents: Monomial, coefficient: mpf) -> "TPolynomial":
        return cls(nvars, {tuple(exponents): coefficient})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "TPolynomial") -> "TPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TPolynomial(self.nvars, out)

    def __mul__(self, other: "TPolynomial | mpf | int") -> "TPolynomial":
        if not isinstance(other, TPolynomial):
            return TPolynomial(self.nvars, {m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, mpf] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2, strict=True))
                out[m] = out.get(m, 0) + c1 * c2
        return TPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def embed(self, axis: int, nvars: int) -> "TPolynomial":
        """View a polynomial in one variable as a polynomial in t_axis among nvars variables."""
        terms = {}
        for (d,), c in self.terms.items():
            m = [0] * nvars
            m[axis] = d
            terms[tuple(m)] = c
        return TPolynomial(nvars, terms)

    def degrees(self) -> set[int]:
        """Total degrees of the monomials present."""
        return {sum(m) for m in self.terms}

    def coefficient(self, exponents: Monomial) -> mpf:
        return self.terms.get(tuple(exponents), mpf(0))

    def __repr__(self) -> str:
        return f"TPolynomial({self.nvars}, {len(self.terms)} terms)"


class HalfEpsSeries:
    """sum_p terms[p] eps^(p/2) for p = 0..order, coefficients TPolynomial."""

    def __init__(self, nvars: int, terms: Sequence[TPolynomial]):
        self.nvars = nvars
        self.terms = list(terms)

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @classmethod
    def one(cls, nvars: int, order: int) -> "HalfEpsSeries":
        zeros = [TPolynomial(nvars) for _ in range(order)]
        return cls(nvars, [TPolynomial.constant(nvars), *zeros])

    def __getitem__(self, p: int) -> TPolynomial:
        return self.terms[p]

    def __mul__(self, other: "HalfEpsSeries") -> "HalfEpsSeries":
        order = min(self.order, other.order)
        out = [TPolynomial(self.nvars) for _ in range(order + 1)]
        for i in range(order + 1):
            if not self.terms[i]:
                continue
            for j in range(order + 1 - i):
                if other.terms[j]:
                    out[i + j] = out[i + j] + self.terms[i] * other.terms[j]
        return HalfEpsSeries(self.nvars, out)

    def exp(self) -> "HalfEpsSeries":
        """exp of a series with zero constant term: E_n = (1/n) sum_j j S_j E_(n-j)."""
        if self.terms[0]:
            raise ValueError("exp needs a series without constant term")
        E = [TPolynomial.constant(self.nvars)]
        for n in range(1, self.order + 1):
            acc = TPolynomial(self.nvars)
            for j in range(1, n + 1):
                if self.terms[j] and E[n - j]:
                    acc = acc + (self.terms[j] * E[n - j]) * j
            E.append(acc * (mpf(1) / n))
        return HalfEpsSeries(self.nvars, E)

    def embed(self, axis: int, nvars: int) -> "HalfEpsSeries":
        return HalfEpsSeries(nvars, [t.embed(axis, nvars) for t in self.terms])


def _real(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


def d_exponent(
    B_i: Fraction,
    xi_i: mpf,
    J_i: int,
    QJ_i: mpf,
    P: int,
    ctx: PrecisionContext,
    max_bernoulli: int | None = None,
) -> HalfEpsSeries:
    """One axis of the exponent as a series in t and sqrt(eps).

    The exponent is (B + xi/2) t sqrt(eps) minus
    sum_p J^(p-1)/p! Li_(2-p)(Q^J) Bern_p(t/sqrt(eps)) eps^(p-1).

    Bernoulli orders run from 3 to ``max_bernoulli`` (default 2P + 2); a term
    b_m t^m of Bern_p lands at half power 2p - 2 - m and is dropped above 2P.
    """
    top = 2 * P
    max_bernoulli = 2 * P + 2 if max_bernoulli is None else max_bernoulli
    with ctx.scope():
        terms = [TPolynomial(1) for _ in range(top + 1)]
        terms[1] = terms[1] + TPolynomial.monomial(1, (1,), _real(B_i) + xi_i / 2)
        for p in range(3, max_bernoulli + 1):
            weight = -(mpf(J_i) ** (p - 1)) / factorial(p) * polylog_neg(p - 2, QJ_i, ctx)
            for m, b in enumerate(bernoulli_poly(p)):
                h = 2 * p - 2 - m
                if b and h <= top:
                    terms[h] = terms[h] + TPolynomial.monomial(1, (m,), weight * _real(b))
        return HalfEpsSeries(1, terms)


def d_tower(
    axis: int, B_i: Fraction, xi_i: mpf, J_i: int, Q_i: mpf, P: int, ctx: PrecisionContext
) -> HalfEpsSeries:
    """1 + sum_p D_p(t) eps^(p/2) through p = 2P, for one summation variable.

    ``axis`` only labels the tower; the polynomials are in a single variable
    and are placed into k variables by c_tower.
    """
    with ctx.scope():
        QJ = Q_i**J_i
        return d_exponent(B_i, xi_i, J_i, QJ, P, ctx).exp()


def c_tower(towers: Sequence[HalfEpsSeries], P: int) -> HalfEpsSeries:
    """C_p = sum over p_1 + ... + p_k = p of prod_i D^(i)_(p_i), with D_0 = 1.

    Towers are given in axis order.
    """
    k = len(towers)
    result = HalfEpsSeries.one(k, 2 * P)
    for axis, tower in enumerate(towers):
        result = result * tower.embed(axis, k)
    return result
