"""Exact counting and enumeration of lambda-quiddities over finite rings."""

from .errors import ResourceLimitError, UnsupportedRegime
from .mat2 import Mat2, Target
from .quiddity import Quiddity, canonical_rep, is_irreducible, is_lambda_quiddity, oplus
from .ring import GF, Ring, RingSpec, Zmod, make_ring

__version__ = "0.1.0"

__all__ = [
    "GF",
    "Mat2",
    "Quiddity",
    "ResourceLimitError",
    "Ring",
    "RingSpec",
    "Target",
    "UnsupportedRegime",
    "Zmod",
    "canonical_rep",
    "is_irreducible",
    "is_lambda_quiddity",
    "make_ring",
    "oplus",
]
