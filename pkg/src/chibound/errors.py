"""Exception types shared across the package."""

from __future__ import annotations


class ChiboundError(Exception):
    """Base class for all package errors."""


class ParseError(ChiboundError, ValueError):
    def __init__(self, message: str, line_no: int | None = None, line: str | None = None):
        self.line_no = line_no
        self.line = line
        if line_no is not None:
            message = f"line {line_no}: {message} ({line!r})"
        super().__init__(message)


class CapacityError(ChiboundError):
    """An exact search was asked to run beyond its configured size limit."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds exact-search limit {limit}")


class PreconditionError(ChiboundError, ValueError):
    """Input does not satisfy an operation's stated precondition."""


class InfeasibleParameters(ChiboundError, ValueError):
    """A generator cannot produce an instance for the requested parameters."""


class ContractViolation(ChiboundError, AssertionError):
    """An inequality that must hold by construction failed.

    Carries the numeric context so the failure can be diagnosed.
    """

    def __init__(self, message: str, **context):
        self.context = context
        detail = ", ".join(f"{k}={v!r}" for k, v in context.items())
        super().__init__(f"{message} [{detail}]" if detail else message)


class SparseFailure(ChiboundError):
    """Retry budget for the naive coloring procedure ran out."""

    def __init__(self, message: str, report: dict):
        self.report = report
        super().__init__(message)
