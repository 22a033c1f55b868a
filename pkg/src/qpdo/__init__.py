"""Exact computations with matrix quantum pseudodifferential operators."""

from .scalar import FieldElement, Q, V, ONE, ZERO, q_power, field_arith, normalize
from .algebra import Element, monomial, identity, multiply, bracket, weight, graded_decompose, triangular_split
from .parser import parse_element, parse_scalar, format_element
from .involutions import InvolutionParams, validate_params, sigma_apply, sigma_apply_oracle

__version__ = "0.1.0"
