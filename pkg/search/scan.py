"""Grid searches for exponent perturbations that satisfy the modularity constraints."""

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import mpmath
from mpmath import mpf

from asymptotics.datum import Matrix
from asymptotics.profile import ProfileBase, build_base, term_constants
from asymptotics.residuals import ModularityResiduals, TermAsymptotics, modularity_residuals
from config import (
    CPRIME_DISPLAYED_RANGE,
    DEFAULT_DIGITS,
    DEFAULT_MAX_DEN,
    DEFAULT_P,
    MAX_P,
    MAX_TERMS,
    SCREEN_DIGITS,
)
from numerics.precision import PrecisionContext
from numerics.recognize import rational_reconstruct
from search.corpus import Family
from search.records import CandidateRecord, TermChoice
from utils.exceptions import DegenerateError, ValidationError
from utils.logging import LoggerMixin, current_level_name, log_duration, setup_logging

MIN_STEP = Fraction(1, 4)

BVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class AxisGrid:
    """lo, lo + step, ..., up to hi for one coordinate of B."""

    lo: Fraction
    hi: Fraction
    step: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        """Validate bounds and step."""
        for name in ("lo", "hi", "step"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.step < MIN_STEP:
            raise ValidationError(f"grid step must be >= {MIN_STEP}, got {self.step}")
        if self.hi < self.lo:
            raise ValidationError(f"empty grid: lo={self.lo} > hi={self.hi}")

    def values(self) -> tuple[Fraction, ...]:
        count = int((self.hi - self.lo) // self.step) + 1
        return tuple(self.lo + i * self.step for i in range(count))


@dataclass(frozen=True)
class SearchSpec:
    """A scan over n_terms summands sharing (A, J); the first summand carries no extra shift."""

    family: Family
    b_grids: tuple[tuple[AxisGrid, ...], ...]
    cprime_range: tuple[int, int] = CPRIME_DISPLAYED_RANGE
    P: int = DEFAULT_P
    tol: mpf | None = None
    screen_digits: int = SCREEN_DIGITS
    confirm_digits: int = DEFAULT_DIGITS
    max_den: int = DEFAULT_MAX_DEN
    allow_wide_cprime: bool = False

    def __post_init__(self) -> None:
        """Check term count, grid shapes, shift range and precisions."""
        if not 1 <= self.n_terms <= MAX_TERMS:
            raise ValidationError(f"n_terms must be in [1, {MAX_TERMS}], got {self.n_terms}")
        k = len(self.family.J)
        if any(len(grid) != k for grid in self.b_grids):
            raise ValidationError(f"every term needs {k} axis grids")
        lo, hi = self.cprime_range
        if lo > hi:
            raise ValidationError(f"empty C' range [{lo}, {hi}]")
        shown_lo, shown_hi = CPRIME_DISPLAYED_RANGE
        if not self.allow_wide_cprime and (lo < shown_lo or hi > shown_hi):
            raise ValidationError(
                f"C' range [{lo}, {hi}] exceeds [{shown_lo}, {shown_hi}]",
                details="set allow_wide_cprime to scan wider shifts",
            )
        if not 1 <= self.P <= MAX_P:
            raise ValidationError(f"P must be in [1, {MAX_P}], got {self.P}")
        if self.confirm_digits < self.screen_digits:
            raise ValidationError("confirmation precision must not be below screening precision")
        PrecisionContext(self.screen_digits)
        PrecisionContext(self.confirm_digits)

    @classmethod
    def uniform(
        cls,
        family: Family,
        n_terms: int,
        lo: Fraction,
        hi: Fraction,
        step: Fraction = Fraction(1),
        **kwargs,
    ) -> "SearchSpec":
        """Same [lo, hi] grid on every coordinate of every term."""
        grid = tuple(AxisGrid(lo, hi, step) for _ in family.J)
        return cls(family=family, b_grids=(grid,) * n_terms, **kwargs)

    @property
    def n_terms(self) -> int:
        return len(self.b_grids)

    def b_values(self, term: int) -> list[BVector]:
        return list(product(*(axis.values() for axis in self.b_grids[term])))

    def grid(self) -> Iterator[tuple[TermChoice, ...]]:
        """All grid tuples in lexicographic grid order."""
        cprimes = range(self.cprime_range[0], self.cprime_range[1] + 1)
        axes: list[list[tuple[BVector, int]]] = [[(B, 0) for B in self.b_values(0)]]
        for term in range(1, self.n_terms):
            axes.append([(B, c) for B in self.b_values(term) for c in cprimes])
        for point in product(*axes):
            yield tuple(TermChoice(B, c) for B, c in point)

    def distinct_b(self) -> list[BVector]:
        seen: dict[BVector, None] = {}
        for term in range(self.n_terms):
            for B in self.b_values(term):
                seen.setdefault(B, None)
        return list(seen)


_worker_base: ProfileBase | None = None


def _init_worker(A: Matrix, J: tuple[int, ...], digits: int, log_level: str) -> None:
    global _worker_base
    setup_logging(log_level=log_level)
    _worker_base = build_base(A, J, PrecisionContext(digits))


def _worker_term(job: tuple[BVector, int]) -> tuple[BVector, TermAsymptotics]:
    B, P = job
    return B, term_constants(_worker_base, B, P, _worker_base.ctx)


def alpha_rationality(
    profile: ProfileBase, max_den: int, tol: mpf | None = None
) -> Fraction | None:
    """alpha / pi^2 as a small-denominator rational, or None."""
    ctx = profile.ctx
    with ctx.scope():
        tol = tol or ctx.residual_tolerance
        return rational_reconstruct(profile.alpha / mpmath.pi**2, max_den, tol)


def shifted_term(term: TermAsymptotics, cprime: int, ctx: PrecisionContext) -> TermAsymptotics:
    """The term multiplied by q^cprime, which raises gamma by cprime."""
    if not cprime:
        return term
    with ctx.scope():
        gamma = term.gamma + cprime
    return TermAsymptotics(beta=term.beta, gamma=gamma, c=term.c)


@dataclass
class GridScanner(LoggerMixin):
    """Runs a SearchSpec: screen every grid tuple, then confirm the passes at higher precision."""

    spec: SearchSpec
    workers: int = 1
    _terms: dict[int, dict[BVector, TermAsymptotics]] = field(default_factory=dict, repr=False)
    _bases: dict[int, ProfileBase] = field(default_factory=dict, repr=False)

    def base(self, digits: int) -> ProfileBase:
        if digits not in self._bases:
            family = self.spec.family
            self._bases[digits] = build_base(family.A, family.J, PrecisionContext(digits))
        return self._bases[digits]

    def term_table(self, digits: int, needed: Sequence[BVector]) -> dict[BVector, TermAsymptotics]:
        """TermAsymptotics for every B in ``needed`` at ``digits``, computed once each."""
        table = self._terms.setdefault(digits, {})
        missing = [B for B in needed if B not in table]
        if not missing:
            return table
        P = self.spec.P
        if self.workers > 1 and len(missing) > 1:
            self.logger.info(f"Computing {len(missing)} term profiles on {self.workers} workers")
            init = (self.spec.family.A, self.spec.family.J, digits, current_level_name())
            with ProcessPoolExecutor(
                max_workers=self.workers, initializer=_init_worker, initargs=init
            ) as pool:
                chunk = max(1, len(missing) // (4 * self.workers))
                for B, term in pool.map(_worker_term, [(B, P) for B in missing], chunksize=chunk):
                    table[B] = term
        else:
            base = self.base(digits)
            for B in missing:
                table[B] = term_constants(base, B, P, base.ctx)
        return table

    def _tolerance(self, ctx: PrecisionContext) -> mpf:
        return self.spec.tol if self.spec.tol is not None else ctx.residual_tolerance

    def _evaluate(
        self,
        choice: tuple[TermChoice, ...],
        table: dict[BVector, TermAsymptotics],
        ctx: PrecisionContext,
    ) -> ModularityResiduals | None:
        terms = [shifted_term(table[t.B], t.cprime, ctx) for t in choice]
        try:
            return modularity_residuals(terms, self.spec.P, ctx)
        except DegenerateError:
            return None

    def run(self) -> list[CandidateRecord]:
        """Scan the full grid; records come back in grid order."""
        spec = self.spec
        screen = PrecisionContext(spec.screen_digits)
        confirm = PrecisionContext(spec.confirm_digits)
        self.logger.info(
            f"Scanning {spec.family.name}: {spec.n_terms} term(s), P={spec.P}, "
            f"screen {screen.digits} / confirm {confirm.digits} digits"
        )
        needed = spec.distinct_b()
        with log_duration(self.logger, f"Screening profiles for {len(needed)} B vectors"):
            screen_table = self.term_table(screen.digits, needed)
        screen_tol = self._tolerance(screen)
        confirm_tol = self._tolerance(confirm)
        single_pass = {
            B: modularity_residuals([term], spec.P, screen).passes(screen_tol)
            for B, term in screen_table.items()
        }
        alpha = alpha_rationality(self.base(confirm.digits), spec.max_den)

        records = []
        hits = 0
        for choice in spec.grid():
            result = self._evaluate(choice, screen_table, screen)
            passed = result is not None and result.passes(screen_tol)
            if passed:
                confirm_table = self.term_table(confirm.digits, [t.B for t in choice])
                confirmed = self._evaluate(choice, confirm_table, confirm)
                passed = confirmed is not None and confirmed.passes(confirm_tol)
                if confirmed is not None:
                    result = confirmed
            degenerate = len(choice) > 1 and (
                len(set(choice)) == 1 or all(single_pass[t.B] for t in choice) or result is None
            )
            if passed:
                hits += 1
                level = "warning" if degenerate else "info"
                label = " + ".join(t.label() for t in choice)
                suffix = " (degenerate)" if degenerate else ""
                getattr(self.logger, level)(f"Hit {label}{suffix}")
            nan = mpmath.mpf("nan")
            records.append(
                CandidateRecord(
                    family=spec.family.name,
                    terms=choice,
                    residuals=result.residuals() if result else (nan,) * (spec.P - 1),
                    cstar=result.cstar if result else nan,
                    lam=result.lam if result else mpf(0),
                    alpha_over_pi2=alpha,
                    degenerate=degenerate,
                    passed=passed,
                )
            )
        self.logger.info(f"Scan finished: {len(records)} grid points, {hits} passed")
        return records


def scan(spec: SearchSpec, workers: int = 1) -> list[CandidateRecord]:
    """Evaluate every grid tuple of ``spec`` and report residuals, verdicts and degeneracy."""
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    return GridScanner(spec, workers).run()
