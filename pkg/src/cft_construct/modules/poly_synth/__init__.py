from .dirichlet import DirichletData, character_kernel, unit_group_generators, unit_residues
from .frobenius import factor_degrees, frobenius_verify
from .norm_form import BiquadraticBasis, PowerBasis, norm_form_eval, parse_basis, parse_coordinates
from .periods import IntegerPolynomial, gaussian_period_polynomial, working_precision

__all__ = [
    "BiquadraticBasis",
    "DirichletData",
    "IntegerPolynomial",
    "PowerBasis",
    "character_kernel",
    "factor_degrees",
    "frobenius_verify",
    "gaussian_period_polynomial",
    "norm_form_eval",
    "parse_basis",
    "parse_coordinates",
    "unit_group_generators",
    "unit_residues",
    "working_precision",
]
