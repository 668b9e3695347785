"""Exception hierarchy shared by every module.

Anything deriving from :class:`SbkError` is a *domain* error: the CLI maps
it to exit code 1.
"""

from __future__ import annotations


class SbkError(Exception):
    """Base class for domain errors."""


class ParseError(SbkError, ValueError):
    """Malformed word text. ``offset`` is the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ContextError(SbkError, ValueError):
    """Invalid group parameters, or a letter that does not exist in a context."""


class OpenCaseError(SbkError):
    """The requested parameters fall in a range the theory leaves open (k or n < 3)."""


class UnsupportedError(SbkError):
    """The operation is well posed but deliberately not implemented for these inputs."""


class VerificationError(SbkError):
    """A homomorphism or action failed its well-definedness certificate."""


class EqualityUnavailable(SbkError):
    """The target of a homomorphism has no decidable equality."""


class EvaluationError(SbkError, ZeroDivisionError):
    """A Laurent polynomial was evaluated at zero on a variable with a negative exponent."""
