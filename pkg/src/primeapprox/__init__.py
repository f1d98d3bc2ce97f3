"""Prime-denominator Diophantine approximation toolkit."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    InvalidArgument,
    MissingEntry,
    OutOfRange,
    PrecisionExhausted,
    PrimeApproxError,
    ScheduleViolation,
)

__all__ = [
    "__version__",
    "InvalidArgument",
    "MissingEntry",
    "OutOfRange",
    "PrecisionExhausted",
    "PrimeApproxError",
    "ScheduleViolation",
]
