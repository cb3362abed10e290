from __future__ import annotations


class HomcatError(Exception):
    """Base class for library errors."""


class DimensionError(HomcatError, ValueError):
    """Operands live in spaces of incompatible dimension."""


class AxiomError(HomcatError):
    """A construction's precondition failed; ``report`` holds the witnesses."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report

    def __str__(self):
        msg = super().__str__()
        if self.report is not None and self.report.failures:
            w = self.report.failures[0]
            msg += f" (first witness: {w.identity} at {w.describe_inputs()}: lhs={w.lhs}, rhs={w.rhs})"
        return msg


class FormatError(HomcatError, ValueError):
    """A structure file is malformed."""
