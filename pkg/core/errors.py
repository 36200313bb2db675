"""Exception hierarchy for timebound.

Library code raises these; only the CLI turns them into exit codes.
"""
from typing import Optional, Sequence


class TimeboundError(ValueError):
    """Base class for every domain error raised by timebound."""


class ClockSkewError(TimeboundError):
    """An observation is older than the action that supposedly produced it."""

    def __init__(self, object_id: str, timestamp: int, action_start: int):
        self.object_id = object_id
        self.timestamp = timestamp
        self.action_start = action_start
        super().__init__(
            f"clock skew: {object_id!r} at {timestamp} precedes action start {action_start}"
        )


class SampleError(TimeboundError):
    """Duration samples cannot be fitted (empty set, mixed labels, bad parameters)."""

    def __init__(self, message: str, labels: Sequence[str] = ()):
        self.labels = tuple(labels)
        super().__init__(message)


class GroupingError(TimeboundError):
    """A trace group violates the span rule of its threshold."""


class ParseError(TimeboundError):
    """Malformed input line. Message is prefixed with the 1-based line number."""

    def __init__(self, line_number: int, message: str, source: Optional[str] = None):
        self.line_number = line_number
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}line {line_number}: {message}")


class ArtifactMismatchError(TimeboundError):
    """Two run artifacts (detection report, truth report) do not belong together."""
