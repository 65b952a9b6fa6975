"""Simulation and algebraic analysis of fully distributed Lagrange coded computing
with inconsistent (multi-version) data owners."""

__version__ = "0.1.0"

from .config import VersConfig
from .errors import (
    DivisionByZero,
    DuplicatePoint,
    InternalInconsistency,
    InvalidBehavior,
    InvalidConfig,
    TooLargeToEnumerate,
    VersError,
)
from .field import FieldElement, FieldMatrix, PrimeField
from .poly import Poly, TargetFunction

__all__ = [
    "VersConfig",
    "PrimeField",
    "FieldElement",
    "FieldMatrix",
    "Poly",
    "TargetFunction",
    "VersError",
    "DivisionByZero",
    "DuplicatePoint",
    "InvalidConfig",
    "InvalidBehavior",
    "TooLargeToEnumerate",
    "InternalInconsistency",
]
