"""Flat, hyperbolic, de Sitter and anti de Sitter spacetimes built from a
measured geodesic lamination of the hyperbolic plane."""

from .errors import LamspaceError, ParseError, ValidationError
from .flat import RegularDomain, ct_frame
from .laminations import Lamination, lamination
from .specfile import load_lamination

__version__ = "0.1.0"

__all__ = [
    "LamspaceError",
    "ParseError",
    "ValidationError",
    "RegularDomain",
    "ct_frame",
    "Lamination",
    "lamination",
    "load_lamination",
]
