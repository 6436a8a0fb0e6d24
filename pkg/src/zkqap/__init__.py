"""Verifiable-computation toolkit: arithmetic programs to R1CS to QAP, and the
pairing-based zk-SNARK protocol family built on top of them.

The default group backend simulates the bilinear group in the exponent. It is
exact and fast, and it provides no hiding whatsoever.
"""
from .algebra import (
    DEFAULT_MODULUS,
    Field,
    FieldElement,
    Polynomial,
    default_field,
    field_inverse,
    field_pow,
    interpolate,
    poly_divrem,
    poly_eval,
    vanishing_poly,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MODULUS",
    "Field",
    "FieldElement",
    "Polynomial",
    "default_field",
    "field_inverse",
    "field_pow",
    "interpolate",
    "poly_divrem",
    "poly_eval",
    "vanishing_poly",
]
