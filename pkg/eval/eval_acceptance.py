"""Run the full-scale acceptance checks and collect timed results.

Each check runs at production size (series to q^300, 120-digit constants,
the complete search grids), so a full run takes tens of minutes. The
pytest suite covers the same ground at desk scale.
"""

import argparse
import json
import random
import sys
import time
from collections.abc import Callable
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any

# Add parent directory to path to import from root
sys.path.append(str(Path(__file__).parent.parent))

import mpmath

from asymptotics.expansion import asymptotic_eval, nahm_numeric
from asymptotics.profile import build_base, build_profile, solve_C
from asymptotics.residuals import constraint_residuals
from numerics.precision import PrecisionContext
from qseries.nahm import expand_sum_side
from qseries.partitions import enumerate_condition_partitions
from qseries.products import (
    detect_period,
    euler_factorize,
    product_from_exponents,
    residue_support,
)
from search.checks import (
    capparelli_c_formula,
    capparelli_constraint_spread,
    dilog_check,
    minimal_poly_check,
)
from search.corpus import load_corpus
from search.records import TermChoice, canonical_terms
from search.scan import SearchSpec, alpha_rationality, scan
from search.verify import verify_identities

CheckResult = tuple[bool, dict[str, Any]]

CAPPARELLI_HITS = {
    canonical_terms([TermChoice((1, 0)), TermChoice((4, 6), 2)]),
    canonical_terms([TermChoice((1, 0)), TermChoice((4, 6), 1)]),
    canonical_terms([TermChoice((1, 3)), TermChoice((3, 6), 1)]),
}
MOD9_HITS = {(0, 0), (1, 3), (2, 3)}


def check_identities() -> CheckResult:
    corpus = load_corpus()
    report = verify_identities(corpus.identities.values(), order=300)
    return report.passed, {"failed": [r.name for r in report.failures()]}


def check_partitions() -> CheckResult:
    corpus = load_corpus()
    mismatches = {}
    for identity in corpus.identities.values():
        if identity.condition is None:
            continue
        oracle = enumerate_condition_partitions(identity.condition, 60)
        mismatch = expand_sum_side(identity.sum_sides[0], 60).first_mismatch(oracle)
        if mismatch is not None:
            mismatches[identity.name] = mismatch
    return not mismatches, {"mismatches": mismatches}


def check_capparelli_constants() -> CheckResult:
    ctx = PrecisionContext(120)
    family = load_corpus().family("capparelli")
    base = build_base(family.A, family.J, ctx)
    tol = mpmath.mpf(10) ** -100
    with ctx.scope():
        errors = {
            "Q1": abs(base.Q[0] - mpmath.mpf(3) / 4),
            "Q2": abs(base.Q[1] - 2 * mpmath.cbrt(3) ** -2),
            "xi1": abs(base.xi[0] - 3),
            "xi2": abs(base.xi[1] - 24),
            "gamma_shift": abs(base.gamma_shift - mpmath.mpf(29) / 12),
        }
    return all(e < tol for e in errors.values()), {k: mpmath.nstr(v, 5) for k, v in errors.items()}


def check_c_formula() -> CheckResult:
    ctx = PrecisionContext(120)
    family = load_corpus().family("capparelli")
    base = build_base(family.A, family.J, ctx)
    tol = mpmath.mpf(10) ** -80
    errors = {}
    for B1 in range(3):
        for B2 in range(3):
            profile = build_profile(family.datum((B1, B2)), 4, ctx, base)
            expected = ctx.real(capparelli_c_formula(B1, B2))
            errors[f"{B1},{B2}"] = abs(solve_C(profile, ctx) - expected)
    return all(e < tol for e in errors.values()), {k: mpmath.nstr(v, 5) for k, v in errors.items()}


def check_residual_polys() -> CheckResult:
    ctx = PrecisionContext(120)
    family = load_corpus().family("capparelli")
    base = build_base(family.A, family.J, ctx)
    points = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]
    spread = capparelli_constraint_spread(base, points, ctx)
    with ctx.scope():
        zero = build_profile(family.datum((0, 0)), 4, ctx, base)
        at_zero = constraint_residuals(zero.c[0], zero.c, 4, ctx)
    tol = mpmath.mpf(10) ** -30
    ok = all(s < tol for s in spread) and all(abs(x) < ctx.tolerance for x in at_zero)
    return ok, {"spread": [mpmath.nstr(s, 5) for s in spread]}


def check_capparelli_scan() -> CheckResult:
    family = load_corpus().family("capparelli")
    spec = SearchSpec.uniform(family, 2, Fraction(0), Fraction(6))
    records = scan(spec)
    hits = {r.canonical_key for r in records if r.passed and not r.degenerate}
    degenerate = sum(r.passed and r.degenerate for r in records)
    return hits == CAPPARELLI_HITS, {
        "hits": sorted(" + ".join(t.label() for t in key) for key in hits),
        "degenerate_hits": degenerate,
        "grid_points": len(records),
    }


def check_mod9_scan() -> CheckResult:
    family = load_corpus().family("mod9")
    spec = SearchSpec.uniform(family, 1, Fraction(-40), Fraction(40))
    records = scan(spec)
    hits = {tuple(int(b) for b in r.terms[0].B) for r in records if r.passed}
    ok = hits == MOD9_HITS and (1, 2) not in hits
    return ok, {"hits": sorted(hits), "grid_points": len(records)}


def check_dilog() -> CheckResult:
    ctx = PrecisionContext(120)
    residuals = {name: dilog_check(name, ctx) for name in ("cap", "mod9")}
    tol = mpmath.mpf(10) ** -110
    ok = all(r < tol for r in residuals.values())
    return ok, {k: mpmath.nstr(v, 5) for k, v in residuals.items()}


def check_minimal_polys() -> CheckResult:
    report = minimal_poly_check(PrecisionContext(120))
    tol = mpmath.mpf(10) ** -110
    ok = all(abs(r.value) < tol for r in report.residuals)
    return ok, {f"{r.family}: {r.label}": mpmath.nstr(abs(r.value), 5) for r in report.residuals}


def check_alpha() -> CheckResult:
    ctx = PrecisionContext(120)
    corpus = load_corpus()
    found = {}
    for name in ("capparelli", "mod9"):
        family = corpus.family(name)
        found[name] = alpha_rationality(build_base(family.A, family.J, ctx), 10**6)
    expected = {"capparelli": Fraction(1, 18), "mod9": Fraction(2, 27)}
    return found == expected, {k: str(v) for k, v in found.items()}


def check_convergence() -> CheckResult:
    ctx = PrecisionContext(60)
    family = load_corpus().family("capparelli")
    datum = family.datum((0, 0), Fraction(-1, 24))
    profile = build_profile(datum, 4, ctx)
    errors = []
    with ctx.scope():
        for eps in (mpmath.mpf("0.1"), mpmath.mpf("0.05")):
            exact = nahm_numeric(datum, eps, ctx)
            errors.append(abs(asymptotic_eval(profile, eps, ctx) / exact - 1))
        ratio = errors[0] / errors[1]
    details = {"errors": [mpmath.nstr(e, 5) for e in errors], "ratio": mpmath.nstr(ratio, 6)}
    return 16 <= ratio <= 64, details


def check_factorization() -> CheckResult:
    identity = load_corpus().identity("cap1")
    exponents = euler_factorize(expand_sum_side(identity.sum_sides[0], 60))
    period = detect_period(exponents, 20)
    support = {r for r, _ in residue_support(exponents, period)} if period else set()
    rng = random.Random(12)
    roundtrips = 0
    for _ in range(100):
        sample = tuple(rng.randint(-3, 3) for _ in range(40))
        if euler_factorize(product_from_exponents(sample, 40)) == sample:
            roundtrips += 1
    ok = period == 12 and support == {2, 3, 9, 10} and roundtrips == 100
    return ok, {"period": period, "support": sorted(support), "roundtrips": roundtrips}


CHECKS: list[tuple[str, Callable[[], CheckResult]]] = [
    ("identities to q^300", check_identities),
    ("partition oracle to q^60", check_partitions),
    ("Capparelli Q, xi, gamma shift", check_capparelli_constants),
    ("Capparelli C formula", check_c_formula),
    ("Capparelli residual polynomials", check_residual_polys),
    ("two-sum Capparelli scan", check_capparelli_scan),
    ("mod-9 scan", check_mod9_scan),
    ("dilogarithm identities", check_dilog),
    ("minimal polynomials", check_minimal_polys),
    ("alpha rationality", check_alpha),
    ("asymptotic convergence order", check_convergence),
    ("Euler factorization", check_factorization),
]


def run_acceptance(selected: list[str] | None, output_file: Path) -> bool:
    """Run the selected checks (all by default) and save the results.

    Args:
        selected: Substrings selecting checks by name, or None for all
        output_file: Path to save the JSON results

    Returns:
        Whether every selected check passed

    """
    checks = [(n, f) for n, f in CHECKS if not selected or any(s in n for s in selected)]
    results = []
    total = len(checks)

    print(f"Running {total} acceptance checks...")
    print("-" * 60)

    for i, (name, check) in enumerate(checks):
        print(f"[{i + 1}/{total}] {name}")
        start_time = time.time()
        try:
            passed, detail = check()
            error_msg = None
        except Exception as e:
            passed, detail = False, {}
            error_msg = f"{type(e).__name__}: {e}"
        duration = time.time() - start_time

        results.append(
            {
                "check": name,
                "passed": passed,
                "detail": detail,
                "duration": duration,
                "error": error_msg,
                "timestamp": datetime.now().isoformat(),
            }
        )

        if passed:
            print(f"  ✓ Passed in {duration:.2f} seconds")
        elif error_msg:
            print(f"  ✗ Error after {duration:.2f} seconds: {error_msg}")
        else:
            print(f"  ✗ Failed in {duration:.2f} seconds: {json.dumps(detail)[:200]}")
        print()

    print(f"Saving results to {output_file}")
    with open(output_file, "w", encoding="utf-8") as f:
        json.dump(results, f, ensure_ascii=False, indent=2)

    passed_count = sum(1 for r in results if r["passed"])
    total_duration = sum(r["duration"] for r in results)

    print("-" * 60)
    print("ACCEPTANCE SUMMARY")
    print(f"Total checks: {total}")
    print(f"Passed: {passed_count}")
    print(f"Failed: {total - passed_count}")
    print(f"Total time: {total_duration:.1f} seconds")
    print(f"Results saved to: {output_file}")
    return passed_count == total


def main():
    """Run acceptance checks."""
    parser = argparse.ArgumentParser(description="Full-scale nahmscan acceptance run")
    parser.add_argument(
        "--only", nargs="*", default=None, help="Run only checks whose name contains these strings"
    )
    parser.add_argument("--output", "-o", default=None, help="Output file for results")
    args = parser.parse_args()

    if args.output is None:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        output_file = Path(__file__).parent / "results" / f"acceptance_{timestamp}.json"
    else:
        output_file = Path(args.output)
    output_file.parent.mkdir(parents=True, exist_ok=True)

    try:
        ok = run_acceptance(args.only, output_file)
    except KeyboardInterrupt:
        print("\nAcceptance run interrupted by user.")
        sys.exit(130)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
