"""Exact verification of generalized complex structures, tangent lifts and Lie bialgebroids."""
from .poly import Chart, GaussRational, I, Poly
from .parse import ParseError, parse_expression

__all__ = ["Chart", "GaussRational", "I", "Poly", "ParseError", "parse_expression"]
__version__ = "0.1.0"
