"""Exception types and the validation report shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass, field


class EndoError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(EndoError):
    """Malformed input: unknown names, bad JSON shape, wrong types."""


class ShapeError(EndoError, ValueError):
    """Matrix or map shapes that do not compose."""


class BaseMismatch(EndoError):
    """Objects or maps from different enrichment bases were mixed."""


class GuardExceeded(EndoError):
    """An enumeration would exceed the configured size guard."""

    def __init__(self, size, guard, what="enumeration"):
        super().__init__(f"{what} of size {size} exceeds guard {guard}")
        self.size = size
        self.guard = guard


class VerificationError(EndoError):
    """A structural check failed (not a monoid map, closure failure, ...)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(map(str, self.witness))
        s = f"{self.axiom} failure at ({w})"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    """Outcome of a validation: empty ``failures`` means OK.

    ``info`` carries counts and other facts worth printing (dimensions,
    ranks, cardinalities).
    """

    subject: str
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    @property
    def first(self):
        return self.failures[0] if self.failures else None

    def fail(self, axiom, witness, detail=""):
        self.failures.append(Failure(axiom, tuple(witness), detail))

    def extend(self, other):
        self.failures.extend(other.failures)
        return self

    def raise_if_failed(self):
        if self.failures:
            raise VerificationError(f"{self.subject}: {self.first}", self)

    def __str__(self):
        if self.ok:
            return f"{self.subject}: OK"
        return f"{self.subject}: FAIL ({len(self.failures)}) first {self.first}"
