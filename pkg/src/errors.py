"""
Exception hierarchy shared by every package.

Bad input is a ``ValueError``; broken internal consistency is a ``RuntimeError``.
"""
from typing import Optional


class ArgumentError(ValueError):
    """Arguments violate an operation's precondition."""


class ArcError(ArgumentError):
    """Endpoints do not form a valid arc."""


class ParseError(ArgumentError):
    """A point, arc, object, label or series literal could not be parsed."""


class SchemaError(ValueError):
    """A surface or tilting file does not match its schema."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path or "$"
        super().__init__(f"{self.path}: {message}")


class DomainError(ValueError):
    """The operation is not defined for these inputs."""


class RealizationError(RuntimeError):
    """A computed module or series contradicts the arc model."""


class SeriesError(RuntimeError):
    """A formal series could not be built or parsed."""
