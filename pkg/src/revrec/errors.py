"""Exception types shared across the revrec package."""

from __future__ import annotations


class RevRecError(Exception):
    """Base class for all revrec-specific errors."""


class ValidationError(RevRecError):
    """A record, field, or argument failed validation.

    ``line_no`` and ``field`` locate the offending input when the error
    comes from parsing a record file; both are None for in-process
    argument checks.
    """

    def __init__(self, message: str, *, line_no: int | None = None, field: str | None = None):
        super().__init__(message)
        self.line_no = line_no
        self.field = field


class EmptyCorpusError(RevRecError):
    """A corpus (or corpus file) contained no usable records."""


class EmptyHistoryError(RevRecError):
    """Recommendation was requested against an empty history."""


class ConfigurationError(RevRecError):
    """An operation was invoked with an unusable configuration."""


class EmbeddingFormatError(RevRecError):
    """A word-vector file violated the expected text format."""

    def __init__(self, message: str, *, line_no: int | None = None):
        super().__init__(message)
        self.line_no = line_no


class EvaluationError(RevRecError):
    """An evaluation run could not be performed on the given inputs."""
