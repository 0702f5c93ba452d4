"""Lattice computations for Ulrich line classes on unnodal Enriques surfaces."""

__version__ = "0.1.0"

from .errors import EnriqError
from .kernels import BACKEND
from .lattice import DivisorClass, E, fano_delta, format_divisor, pairing, parse_divisor

__all__ = [
    "BACKEND",
    "DivisorClass",
    "E",
    "EnriqError",
    "__version__",
    "fano_delta",
    "format_divisor",
    "pairing",
    "parse_divisor",
]
