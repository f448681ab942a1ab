"""Asymptotic expansions of Nahm-type sums and the modularity constraints they imply."""

from .datum import NahmDatum
from .expansion import asymptotic_eval, nahm_numeric, product_numeric
from .gaussian import GaussianMoments, gaussian_moment
from .profile import (
    AsymptoticProfile,
    ProfileBase,
    build_base,
    build_profile,
    c_constants,
    product_alpha,
    profile_record,
    solve_C,
    term_constants,
)
from .qsystem import solve_Q
from .residuals import (
    ModularityResiduals,
    TermAsymptotics,
    constraint_residuals,
    modularity_residuals,
)
from .towers import HalfEpsSeries, TPolynomial, c_tower, d_tower

__all__ = [
    "NahmDatum",
    "solve_Q",
    "TPolynomial",
    "HalfEpsSeries",
    "d_tower",
    "c_tower",
    "GaussianMoments",
    "gaussian_moment",
    "ProfileBase",
    "AsymptoticProfile",
    "build_base",
    "build_profile",
    "term_constants",
    "c_constants",
    "solve_C",
    "product_alpha",
    "profile_record",
    "TermAsymptotics",
    "ModularityResiduals",
    "modularity_residuals",
    "constraint_residuals",
    "asymptotic_eval",
    "nahm_numeric",
    "product_numeric",
]
