"""Fourier-Dunkl orthogonal expansions on (-1,1).

Special functions and Bessel zero tables (``specfun``), Gauss quadrature for
the |x|^{2a+1} measure (``measure``), the orthonormal system with its kernel
machinery (``dunkl``), Muckenhoupt weight checkers and model operators
(``weights``), and a CLI experiment harness (``cli``).
"""

from ._core import BACKEND
from .specfun import AlphaParam, ZeroTable, bessel_j, bessel_j_even, build_zero_table, e_alpha, script_i
from .measure import LpNormSpec, QuadratureRule, build_rule, integrate, total_mass, weighted_lp_norm
from .dunkl import (
    DunklSystem,
    SeriesExpansion,
    b_function,
    eval_e,
    expand,
    kernel_closed_sum_form,
    kernel_direct,
    partial_sum,
    remainder_bound_check,
    t_split,
)
from .weights import (
    ApReport,
    PowerWeight,
    ap_numeric,
    boundedness_probe,
    calderon,
    corollary_predicate,
    hilbert,
    operator_j,
    theorem_conditions,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaParam",
    "ApReport",
    "BACKEND",
    "DunklSystem",
    "LpNormSpec",
    "PowerWeight",
    "QuadratureRule",
    "SeriesExpansion",
    "ZeroTable",
    "ap_numeric",
    "b_function",
    "bessel_j",
    "bessel_j_even",
    "boundedness_probe",
    "build_rule",
    "build_zero_table",
    "calderon",
    "corollary_predicate",
    "e_alpha",
    "eval_e",
    "expand",
    "hilbert",
    "integrate",
    "kernel_closed_sum_form",
    "kernel_direct",
    "operator_j",
    "partial_sum",
    "remainder_bound_check",
    "script_i",
    "t_split",
    "theorem_conditions",
    "total_mass",
    "weighted_lp_norm",
]
