"""Exception types shared across the package."""

from __future__ import annotations


class ClaimkitError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.message = message
        self.source = source
        self.line = line
        super().__init__(self._render())

    def _render(self) -> str:
        prefix = ""
        if self.source is not None and self.line is not None:
            prefix = f"{self.source}:{self.line}: "
        elif self.source is not None:
            prefix = f"{self.source}: "
        elif self.line is not None:
            prefix = f"line {self.line}: "
        return prefix + self.message


class ParseError(ClaimkitError):
    """A file could not be read as the format it claims to be."""


class ValidationError(ClaimkitError):
    """Well-formed input that violates a documented constraint."""


class UndefinedProportionError(ClaimkitError):
    """A proportion was requested over an empty tally."""
