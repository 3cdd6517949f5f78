"""Shared exception types.

The verifiers distinguish a few failure families so that callers (and the
CLI) can map them onto exit codes without string matching.
"""


class VerificationError(Exception):
    """Base class for structured failures raised by verifiers."""


class ResourceLimitError(VerificationError):
    """An enumeration would exceed a configured cap (e.g. the ball radius)."""


class DegenerateInputError(ValueError):
    """Input is degenerate for the requested operation (e.g. axis of the identity)."""


class InvariantViolationError(VerificationError):
    """An internal invariant that should be unbreakable was observed broken."""


class DomainError(ValueError):
    """Argument outside the operation's domain (e.g. decrement on a zero constant)."""


class ModelError(ValueError):
    """A finite model (action table, group table, witness) is malformed."""


class PreconditionError(ValueError):
    """A documented precondition was not met (e.g. non-free action, missing certificate)."""


class InconclusiveError(VerificationError):
    """Numeric verification could not decide at the available precision."""
