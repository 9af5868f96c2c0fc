"""Exact tools for rigidly convex sets, spectrahedra and Lasserre-type relaxations."""

from .parse import PolyParseError, parse_poly
from .poly import MPoly, UPoly, format_poly

__version__ = "0.1.0"

__all__ = ["MPoly", "UPoly", "PolyParseError", "format_poly", "parse_poly", "__version__"]
