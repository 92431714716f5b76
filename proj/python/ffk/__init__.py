"""Exact arithmetic on the special fibers of Fermat curves."""

from ._ffk import (
    CapExceeded,
    ContractViolation,
    Model,
    ParameterError,
    alpha,
    beta_sp,
    double_roots,
    euler_phi,
    factor,
    fermat_split_check,
    geometric_contribution,
    geometric_q,
    lower_bound,
    rho,
    simple_lower,
    upper_bound,
)

__all__ = [
    "CapExceeded",
    "ContractViolation",
    "Model",
    "ParameterError",
    "alpha",
    "beta_sp",
    "double_roots",
    "euler_phi",
    "factor",
    "fermat_split_check",
    "geometric_contribution",
    "geometric_q",
    "lower_bound",
    "rho",
    "simple_lower",
    "upper_bound",
]
