"""Shared exception hierarchy.

Mathematical failures (bad input data, unsupported regimes, violated
preconditions) all derive from ProtoricError so the CLI can map them to a
single exit code.
"""


class ProtoricError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(ProtoricError):
    pass


class InsufficientDepth(ProtoricError):
    """An operation needed coordinates beyond the known truncation depth."""


class NotPointed(ProtoricError):
    pass


class BudgetExceeded(ProtoricError):
    pass


class UnsupportedRegime(ProtoricError):
    """Semigroup is neither positively graded nor a group."""


class ImageNotContained(ProtoricError):
    """A homomorphism maps some generator outside the target semigroup."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class NonSurjectiveConnect(ProtoricError):
    """A tower connecting map misses a generator of its target."""

    def __init__(self, message, witness, level):
        super().__init__(message)
        self.witness = witness
        self.level = level


class TowerStructureError(ProtoricError):
    pass
