"""Entanglement-assisted quantum convolutional code construction and checking."""

from eaqcc.laurent import D, ONE, ZERO, LaurentPoly, RationalFunc, parse_poly

__all__ = ["D", "ONE", "ZERO", "LaurentPoly", "RationalFunc", "parse_poly"]
