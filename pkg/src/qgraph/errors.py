"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class QGraphError(Exception):
    """Base class for all errors raised by qgraph."""


class InputError(QGraphError, ValueError):
    """Malformed or out-of-domain input (CLI exit code 2)."""


class GuardExceeded(QGraphError):
    """A desk-scale size guard was exceeded (CLI exit code 3)."""


class FieldMismatch(InputError):
    """Operands belong to different finite fields."""


class InexactDivision(QGraphError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class NotChordal(InputError):
    """A chordal graph was required; carries an induced cycle as witness."""

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.witness = witness


class VerificationError(QGraphError):
    """A guaranteed identity failed, which means an implementation bug."""
