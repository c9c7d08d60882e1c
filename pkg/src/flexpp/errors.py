"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FlexppError(Exception):
    """Base class for all errors this package raises deliberately."""


class ConfigError(FlexppError):
    """Bad preset name, mode-spec text, or descriptor invariant violation.

    ``offset`` is a byte offset into the offending spec text when the
    problem is positional (malformed pair, bad escape), else None.
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class MacroError(FlexppError):
    """Rejected macro definition (reserved name, empty name, bad bytes)."""


class ExprError(FlexppError):
    """Expression syntax, type, or arithmetic failure.

    ``offset`` points into the expression text where the problem was
    detected (0-based byte offset).
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class GlobError(FlexppError):
    """Malformed glob pattern (unterminated set, trailing escape)."""


class IncludeError(FlexppError):
    """Include resolution failure (not found, depth limit)."""


class ExecError(FlexppError):
    """Command spawn failure for the exec directive."""


class ProcessingError(FlexppError):
    """An error raised while scanning input, carrying a source location.

    Renders as ``file:line: error: message`` — the CLI diagnostic format.
    """

    def __init__(self, filename: str, line: int, message: str):
        super().__init__(message)
        self.filename = filename
        self.line = line
        self.message = message

    def diagnostic(self) -> str:
        return f"{self.filename}:{self.line}: error: {self.message}"

    def __str__(self) -> str:
        return self.diagnostic()
