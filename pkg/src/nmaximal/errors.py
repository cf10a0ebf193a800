"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class NMaximalError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(NMaximalError, ValueError):
    pass


class AmbientMismatch(NMaximalError, ValueError):
    pass


class ShapeError(NMaximalError, ValueError):
    pass


class UnsupportedDegree(NMaximalError, ValueError):
    pass


class JacobiViolation(NMaximalError, ValueError):
    """Raised when a structure-constant table breaks the Jacobi identity.

    ``triple`` holds the 0-based basis indices ``(i, j, k)`` of the first
    violating triple in lexicographic order.
    """

    def __init__(self, triple: tuple[int, int, int], residue=None):
        self.triple = triple
        self.residue = residue
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


class NotASubalgebra(NMaximalError, ValueError):
    pass


class NotAnIdeal(NMaximalError, ValueError):
    pass


class NotInvariant(NMaximalError, ValueError):
    pass


class RationalFieldUnsupported(NMaximalError, ValueError):
    pass


class EnvelopeExceeded(NMaximalError, RuntimeError):
    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"enumeration needs {estimate} subspaces, budget is {budget}")


class InvalidParam(NMaximalError, ValueError):
    pass


class SweepTooLarge(NMaximalError, ValueError):
    pass


class TableSyntaxError(NMaximalError, ValueError):
    """Malformed structure-constant document; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class BadFraction(TableSyntaxError):
    pass
