"""Exception hierarchy shared by every logigrid module."""

from __future__ import annotations


class LogigridError(Exception):
    """Base class. ``line`` is set when the error comes from a document."""

    code = "Error"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PuzzleSyntaxError(LogigridError):
    code = "SyntaxError"


class UnknownLabel(LogigridError, KeyError):
    code = "UnknownLabel"

    def __str__(self) -> str:  # KeyError would repr() the message
        return Exception.__str__(self)


class SameCategory(LogigridError, ValueError):
    code = "SameCategoryPair"


class ArityError(LogigridError, ValueError):
    code = "ArityError"


class UnorderedCategory(LogigridError, ValueError):
    code = "UnorderedCategory"


class DuplicateLabel(LogigridError, ValueError):
    code = "DuplicateLabel"


class InvalidPuzzle(LogigridError, ValueError):
    """Structural defect without a more specific class (sizes, clue ids...)."""

    code = "InvalidPuzzle"


class Contradiction(LogigridError):
    """A fill conflicts with the grid: the puzzle has no solution (or a rule is unsound)."""

    code = "Contradiction"


class EmptyDomain(Contradiction):
    code = "EmptyDomain"


class TargetNeverFilled(LogigridError, LookupError):
    code = "TargetNeverFilled"
