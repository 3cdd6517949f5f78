"""Desk-scale verification of paradoxical decompositions and the measures they exclude.

The package turns a family of classical constructions into finite, exactly
checkable artifacts: reduced words in the free rotation group and their
four-piece decomposition, exact rational rotation matrices with a mod-7
freeness certificate, fixed directions on the sphere with certified
absorbing rotations, finite action models for the paradoxical witnesses, the
finitely additive measures that the paradoxes rule out, and additive maps
that no single slope explains.  Exact arithmetic wherever possible; interval
arithmetic with certified margins where irrational geometry forces numerics.
"""

from .errors import (
    DegenerateInputError,
    DomainError,
    InconclusiveError,
    InvariantViolationError,
    ModelError,
    PreconditionError,
    ResourceLimitError,
    VerificationError,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateInputError",
    "DomainError",
    "InconclusiveError",
    "InvariantViolationError",
    "ModelError",
    "PreconditionError",
    "ResourceLimitError",
    "VerificationError",
    "__version__",
]
