"""
Error Types
===========
Contract violations are programming errors on the caller's side and raise.
Identity failures are never exceptions; they travel as residuals in check records.
"""

from pathlib import Path


class ContractViolation(ValueError):
    """A documented precondition of an operation does not hold."""


class SingularFrameError(ContractViolation):
    """Vielbein or Cartan coframe is not invertible at a point."""

    def __init__(self, point, what: str = "vielbein"):
        self.point = tuple(point)
        self.what = what
        super().__init__(f"{what} is singular at point {self.point}")


class StateFormatError(ValueError):
    """Malformed state file. Carries the 1-based line and the offending field."""

    def __init__(self, path: str | Path, line: int, field: str, message: str):
        self.path = str(path)
        self.line = line
        self.field = field
        self.message = message
        super().__init__(f"{self.path}:{line}: {field}: {message}")
