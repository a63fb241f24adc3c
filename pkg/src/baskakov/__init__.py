"""Baskakov quasi-interpolants: exact coefficient algebra, fast evaluation,
Lebesgue-norm estimation, and numerical experiments.

The operator V_n reproduces only linear functions; composing it with a
truncated differential inverse gives quasi-interpolants V_n^(r) that are
exact on polynomials of degree r while keeping the positive-basis structure.
This package computes the coefficient polynomials exactly over the rationals,
evaluates the quasi-interpolants with compiled or pure-NumPy kernels, and
reproduces the classical convergence and norm experiments.
"""

from .coeffs import (
    AsymptoticPoly,
    CoeffTable,
    apply_diff_operator,
    asymptotic_poly,
    coeff_table,
    eta_direct,
    eta_recurrence,
    newton_image,
    table_from_json,
    table_to_json,
    theta_direct,
    theta_recurrence,
)
from .evaluator import (
    BasisRow,
    QIConfig,
    SampleSet,
    baskakov_eval,
    basis_row,
    deriv_eval,
    forward_diff,
    qi_eval,
    qi_eval_closed,
    qi_eval_grid,
    tail_bound,
)
from .exactalg import (
    Poly,
    Rational,
    binomial,
    falling_factorial,
    poly_display,
    rising_factorial,
    stirling1,
    stirling2,
)
from .lebesgue import (
    LebesgueEstimate,
    default_truncation,
    lebesgue_function,
    norm_estimate,
    norm_table,
    quasi_lagrange_row,
)
from ._kernels import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = [
    "AsymptoticPoly",
    "BasisRow",
    "CoeffTable",
    "LebesgueEstimate",
    "Poly",
    "QIConfig",
    "Rational",
    "SampleSet",
    "apply_diff_operator",
    "asymptotic_poly",
    "baskakov_eval",
    "basis_row",
    "binomial",
    "coeff_table",
    "default_truncation",
    "deriv_eval",
    "eta_direct",
    "eta_recurrence",
    "falling_factorial",
    "forward_diff",
    "kernel_backend",
    "lebesgue_function",
    "newton_image",
    "norm_estimate",
    "norm_table",
    "poly_display",
    "qi_eval",
    "qi_eval_closed",
    "qi_eval_grid",
    "quasi_lagrange_row",
    "rising_factorial",
    "stirling1",
    "stirling2",
    "tail_bound",
    "table_from_json",
    "table_to_json",
    "theta_direct",
    "theta_recurrence",
    "__version__",
]
