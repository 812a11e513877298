"""Exact compatibility checks for pairs of discrete conditional distributions."""

from .engine import CompatReport, Verdict, classify
from .exactlin import RatMatrix, rational
from .specmodel import ConditionalPair, validate_pair

__all__ = [
    "CompatReport",
    "ConditionalPair",
    "RatMatrix",
    "Verdict",
    "classify",
    "rational",
    "validate_pair",
]
