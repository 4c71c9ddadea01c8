"""Exceptions shared across the package."""

from __future__ import annotations


class ProfileError(ValueError):
    """Malformed profile, precedence, or time-window input.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(Exception):
    """No schedule satisfies the requested constraints (windows/precedences)."""


class SizeLimitError(Exception):
    """Instance exceeds a solver's configured size guard."""
