"""Exact computations in Artin and surface braid groups.

Modules: ``words`` (free words and parsing), ``presentations`` (group
presentations and homomorphisms), ``exactalg`` (Smith normal form, Laurent
polynomials), ``nilquot`` (class-2 quotients), ``homs`` (named projections),
``actions`` (the mixed-braid conjugation action), ``reps`` (Burau and
Gassner), ``cli``.
"""

from .errors import (
    ContextError,
    EqualityUnavailable,
    EvaluationError,
    OpenCaseError,
    ParseError,
    SbkError,
    UnsupportedError,
    VerificationError,
)
from .words import Generator, GroupContext, Letter, Word, parse_word

__version__ = "0.1.0"

__all__ = [
    "ContextError",
    "EqualityUnavailable",
    "EvaluationError",
    "Generator",
    "GroupContext",
    "Letter",
    "OpenCaseError",
    "ParseError",
    "SbkError",
    "UnsupportedError",
    "VerificationError",
    "Word",
    "parse_word",
]
