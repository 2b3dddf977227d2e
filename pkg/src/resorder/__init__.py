"""Densities of primes p for which the residual order or index of g mod p lies in a residue class."""
from .eulerprod import Constant, DensityValue, format_value, parse_value
from .gdecomp import GParams, InvalidBase, decompose, parse_g

__version__ = "0.1.0"

__all__ = [
    "Constant",
    "DensityValue",
    "GParams",
    "InvalidBase",
    "decompose",
    "format_value",
    "parse_g",
    "parse_value",
]
