"""Exception hierarchy and non-fatal diagnostics shared by the engine and the command handlers."""
from dataclasses import dataclass


class SurfaceGenError(Exception):
    """Base class for every error raised by the engine."""


class ConditionSyntaxError(SurfaceGenError):
    """A condition could not be parsed.

    Args:
        message (str): Human readable description.
        offset (int): Byte offset (UTF-8) in the condition text where parsing failed.
        expected (frozenset[str]): Token kinds that would have been accepted.
    """
    def __init__(self, message, offset=0, expected=frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class UnknownPredicateError(ConditionSyntaxError):
    """A predicate name outside the closed predicate set."""


class ConditionEvaluationError(SurfaceGenError):
    """A numeric predicate met a value that is not a decimal number."""


class GrammarError(SurfaceGenError):
    """Malformed grammar file, reported with its line number."""
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class TreeError(SurfaceGenError):
    """Illegal operation on a dependency tree."""


class ModelError(SurfaceGenError):
    """Empty corpus or malformed model file."""


class WeightsError(ModelError):
    """Interpolation weights that are negative or do not sum to one."""


class ContextError(SurfaceGenError):
    """Malformed state/history file or an inconsistent dialog context."""
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InstantiationError(SurfaceGenError):
    """An attribute token has no value in the dialog context."""


class FixtureError(SurfaceGenError):
    """Unknown fixture name or a missing fixture asset."""


@dataclass(frozen=True)
class Diagnostic:
    """A non-fatal finding: skipped rule, ungenerable attribute, search exhaustion."""
    code: str
    message: str
    line: int = None

    def __str__(self):
        return f"line {self.line}: {self.message}" if self.line is not None else self.message
