"""Exception types shared across the engine."""

from __future__ import annotations


class C3Z3Error(Exception):
    """Base class for every error raised by the engine."""


class NonlinearProduct(C3Z3Error):
    """Two unknown-bearing expressions were multiplied."""


class RankDeficient(C3Z3Error):
    """A linear system does not determine all requested unknowns."""

    def __init__(self, message, undetermined=()):
        super().__init__(message)
        self.undetermined = tuple(undetermined)


class Inconsistent(C3Z3Error):
    """A linear system has an equation that reduces to a nonzero constant."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class EmptySpace(C3Z3Error):
    """A moduli space A(n1, n2) fails the monodromy condition."""


class ConflictingValue(C3Z3Error):
    """A store write disagrees with an already committed value."""


class MissingHodgeValue(C3Z3Error):
    """A Hodge integral needed for assembly has not been computed."""


class MissingSeed(C3Z3Error):
    """A WDVV chain has no committed starting value."""


class NoRuleApplies(C3Z3Error):
    """No psi-removal rule covers the requested key."""


class AmbiguousMonomial(C3Z3Error):
    """Two lambda multisets map to the same t-monomial."""


class HbarDegreeMismatch(C3Z3Error):
    """A fixed-locus row is not homogeneous of the declared hbar-degree."""


class TemplateError(C3Z3Error):
    """A locus template is malformed."""
