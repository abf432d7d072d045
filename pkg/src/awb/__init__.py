"""Exact computations with finite-dimensional algebras with bracket (AWBs)."""

from .field import Field
from .errors import AwbError, InputError, PreconditionError, VerificationError, ValidationReport
from .algebra import FiniteAwb, AwbMorphism, validate_awb, check_morphism

QQ = Field(0)

__all__ = ["Field", "QQ", "AwbError", "InputError", "PreconditionError", "VerificationError",
           "ValidationReport", "FiniteAwb", "AwbMorphism", "validate_awb", "check_morphism"]
