from __future__ import annotations


class PrimeApproxError(Exception):
    """Base class for library errors."""


class InvalidArgument(PrimeApproxError, ValueError):
    pass


class OutOfRange(PrimeApproxError):
    """A computation needs more than the configured table/cap.

    ``state`` carries whatever partial progress is useful to a caller that
    wants to extend the table and resume.
    """

    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


class PrecisionExhausted(PrimeApproxError):
    def __init__(self, message: str, depth: int | None = None):
        super().__init__(message)
        self.depth = depth


class MissingEntry(PrimeApproxError, KeyError):
    def __init__(self, prime: int):
        super().__init__(prime)
        self.prime = prime

    def __str__(self):
        return f"no entry for prime {self.prime}"


class ScheduleViolation(PrimeApproxError):
    def __init__(self, message: str, stage: int | None = None):
        super().__init__(message)
        self.stage = stage
