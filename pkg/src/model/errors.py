"""
Engine Errors

Exception types raised by the association engine. The CLI maps them to exit codes.
"""

from typing import Optional


class EngineError(Exception):
    """Base class for all engine errors."""


class AnnotationError(EngineError, ValueError):
    """An annotation record or frame failed validation."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.detail = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StreamOrderError(AnnotationError):
    """Frames arrived out of strictly increasing order."""


class ConfigError(EngineError, ValueError):
    """An engine or scenario configuration is invalid."""


class ClusteringError(EngineError, ValueError):
    """Weighted k-Means or garment matching could not run."""


class EmptyPopulationError(EngineError, ValueError):
    """A report needs at least one customer."""
