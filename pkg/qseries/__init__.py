"""Exact truncated q-series: products, Nahm sums, Euler factorization, partition oracles."""

from .bivariate import BivariateSeries, nahm_expand_bivariate, staircase_x_order, x_pochhammer
from .nahm import expand_sum_side, nahm_expand
from .partitions import CONDITIONS, enumerate_condition_partitions
from .products import (
    ProductSpec,
    detect_period,
    euler_factorize,
    pochhammer_inv,
    product_from_exponents,
    residue_support,
)
from .series import QSeriesTrunc

__all__ = [
    "QSeriesTrunc",
    "BivariateSeries",
    "ProductSpec",
    "pochhammer_inv",
    "product_from_exponents",
    "euler_factorize",
    "detect_period",
    "residue_support",
    "nahm_expand",
    "expand_sum_side",
    "nahm_expand_bivariate",
    "x_pochhammer",
    "staircase_x_order",
    "enumerate_condition_partitions",
    "CONDITIONS",
]
