"""Coxeter polynomials of triangular algebras and their Mahler measures."""

from .polycore import (
    IntPolynomial,
    T,
    cyclotomic_factor,
    cyclotomic_poly,
    is_cyclotomic_type,
    parse_poly,
    format_poly,
)

__version__ = "0.1.0"
