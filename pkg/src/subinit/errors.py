"""Exception hierarchy shared by the whole package.

``SubinitError`` covers everything a caller can trigger with bad input
(malformed text, mismatched dimensions, violated preconditions); the CLI maps
it to exit code 1.  ``InternalInvariantError`` marks states the mathematics
says cannot happen — if one fires, the bug is ours, and the CLI exits 2.
"""

from __future__ import annotations


class SubinitError(Exception):
    """Base class for user-facing errors."""


class ParseError(SubinitError):
    """Raised when polynomial text or an input file cannot be parsed."""


class PreconditionError(SubinitError):
    """Raised when an operation's documented precondition is violated."""


class InternalInvariantError(Exception):
    """A mathematically impossible state was reached; not a user error."""
