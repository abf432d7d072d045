"""Exceptions and validation reports shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field


class AwbError(Exception):
    """Base class for every error raised by :mod:`awb`."""


class InputError(AwbError):
    """Malformed input file or argument."""


class PreconditionError(AwbError):
    """An operation was called on data violating its hypotheses."""


class VerificationError(AwbError):
    """A mathematical check that must hold failed; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Witness:
    axiom: str
    indices: tuple
    lhs: dict
    rhs: dict

    def as_json(self, dims=None):
        from .linalg import vec_to_dense

        def fmt(v, n):
            if n is None:
                return {str(k): str(x) for k, x in sorted(v.items())}
            return [str(x) for x in vec_to_dense(v, n)]

        n = dims if dims is not None else None
        return {"axiom": self.axiom, "indices": list(self.indices),
                "lhs": fmt(self.lhs, n), "rhs": fmt(self.rhs, n)}


@dataclass
class ValidationReport:
    """Outcome of an axiom check; ``valid`` iff no witnesses were found."""

    witnesses: list = field(default_factory=list)
    checked: int = 0
    subject: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.witnesses

    def __bool__(self):
        return self.valid

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.witnesses.extend(other.witnesses)
        self.checked += other.checked
        return self

    def axioms(self) -> set:
        return {w.axiom for w in self.witnesses}

    def raise_if_invalid(self, message=None):
        if not self.valid:
            w = self.witnesses[0]
            raise VerificationError(
                message or f"{self.subject or 'check'} failed: {w.axiom} at {w.indices}", self)
        return self

    def as_json(self, limit=20):
        return {"valid": self.valid, "checked": self.checked,
                "violations": len(self.witnesses),
                "witnesses": [w.as_json() for w in self.witnesses[:limit]]}
