"""
Exception hierarchy for urbounds.

All errors raised by the library derive from :class:`UrbError`, so callers
(and the CLI) can separate bad input from numerical trouble:

- DomainError / ConfigurationError: the request itself is invalid
- NumericalError: the request is valid but has no (computable) answer
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class UrbError(Exception):
    """Base class for every urbounds error."""


class DomainError(UrbError, ValueError):
    """A physical input is outside its domain (r <= 0, N < 2, m < 0, ...)."""

    def __init__(self, message: str, constraint: Optional[str] = None) -> None:
        super().__init__(message)
        self.constraint = constraint or message


class NotAttractiveError(DomainError):
    """Pair potential coupling is not positive."""


class UnsupportedExponentError(DomainError):
    """Power-law exponent outside the supported family, or not handled by an operation."""


class ConfigurationError(UrbError, ValueError):
    """Solver or sampling configuration is inconsistent."""


class NumericalError(UrbError, ArithmeticError):
    """A well-posed computation could not produce a ground energy."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


class CouplingAboveCriticalError(NumericalError):
    """Coulomb coupling at or above 2/pi: the spectrum is unbounded below."""


class BracketExhaustedError(NumericalError):
    """Scale optimum stayed on the bracket edge after every allowed expansion."""


class NumericalFailureError(NumericalError):
    """Eigensolver failure or non-finite matrix elements."""


__all__ = [
    "UrbError",
    "DomainError",
    "NotAttractiveError",
    "UnsupportedExponentError",
    "ConfigurationError",
    "NumericalError",
    "CouplingAboveCriticalError",
    "BracketExhaustedError",
    "NumericalFailureError",
]
