"""Grid searches, closed-form checks and identity verification."""

from .checks import (
    alpha_crosscheck,
    capparelli_c_formula,
    capparelli_constraint_spread,
    capparelli_residual_polys,
    dilog_check,
    minimal_poly_check,
)
from .corpus import Corpus, Family, Identity, load_corpus, load_datum_file
from .records import CandidateRecord, TermChoice, canonical_terms, records_to_csv, records_to_jsonl
from .scan import AxisGrid, GridScanner, SearchSpec, alpha_rationality, scan
from .verify import IdentityReport, IdentityVerifier, VerificationReport, verify_identities

__all__ = [
    "Corpus",
    "Family",
    "Identity",
    "load_corpus",
    "load_datum_file",
    "CandidateRecord",
    "TermChoice",
    "canonical_terms",
    "records_to_jsonl",
    "records_to_csv",
    "AxisGrid",
    "SearchSpec",
    "GridScanner",
    "scan",
    "alpha_rationality",
    "dilog_check",
    "minimal_poly_check",
    "capparelli_c_formula",
    "capparelli_residual_polys",
    "capparelli_constraint_spread",
    "alpha_crosscheck",
    "IdentityVerifier",
    "IdentityReport",
    "VerificationReport",
    "verify_identities",
]
