"""Exact Groebner-basis tools for parameterized polynomial systems.

Computes saturations by the Jacobian determinant, parameter discriminants
and generic regular-zero counts, with a floating-point homotopy layer used
as an independent witness.
"""

from parcont.arith import format_rational, normalize, parse_rational
from parcont.poly import Monomial, Polynomial, Term, VariableContext
from parcont.groebner import GroebnerBasis, buchberger, normal_form
from parcont.ideals import (
    FamilySpec,
    GuardFailure,
    SaturationResult,
    jacobian_determinant,
    saturate,
    specialize_basis,
    specialize_saturated,
)
from parcont.analysis import (
    DiscriminantReport,
    discriminant,
    regular_zero_count,
    standard_monomials,
    verify_continuation_theorem,
)

__all__ = [
    "DiscriminantReport",
    "FamilySpec",
    "GroebnerBasis",
    "GuardFailure",
    "Monomial",
    "Polynomial",
    "SaturationResult",
    "Term",
    "VariableContext",
    "buchberger",
    "discriminant",
    "format_rational",
    "jacobian_determinant",
    "normal_form",
    "normalize",
    "parse_rational",
    "regular_zero_count",
    "saturate",
    "specialize_basis",
    "specialize_saturated",
    "standard_monomials",
    "verify_continuation_theorem",
]
