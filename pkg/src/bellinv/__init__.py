"""Exact Bell-polynomial inverse relations via Lagrange inversion."""

__version__ = "0.1.0"

from .algebra import MultiPoly, UniPoly, falling_factorial, rat_binomial
from .bell import bell_gf, bell_partition, bell_row, bell_table
from .lambdas import (
    FTable,
    LambdaTable,
    ProblemSpec,
    SpecError,
    f_recurrence,
    lambda_closed_m2,
    lambda_closed_m3_degenerate,
    lambda_f_bridge,
    lambda_from_instance,
    lambda_recurrence,
    verify_lambda_laws,
)
from .mina import chi_recursion, f_via_mina, mina_via_matrices, verify_convolutions
from .series import (
    Series,
    basis_expand,
    lagrange_coeffs,
    series_comp_inverse,
    series_compose,
    series_exp,
    series_log,
    series_pow_rat,
)
from .transforms import (
    SingularParameterError,
    general_backward,
    general_forward,
    linear_weight_backward,
    linear_weight_forward,
    mina_backward,
    pipeline_invariants,
    scaled_binomial_backward,
    scaled_binomial_forward,
    two_term_backward,
    two_term_forward,
)
