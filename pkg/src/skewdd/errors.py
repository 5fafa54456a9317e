"""Structured errors shared across the package.

Every error that a caller is expected to catch and act on carries its
repair data as attributes (the enlarged ideal, the exhausted bound, the
missing precision), so driver loops never have to parse messages.
"""

from __future__ import annotations


class SkewError(Exception):
    """Base class for all structured errors raised by this package."""


class ZeroIdealError(SkewError):
    """An inverse, class or generator operation was asked of the zero ideal."""


class MembershipError(SkewError):
    """An element is not in the lattice it was required to lie in."""

    def __init__(self, element, lattice, message: str | None = None):
        self.element = element
        self.lattice = lattice
        super().__init__(message or f"{element} is not a member of {lattice}")


class PrecisionError(SkewError):
    """Not enough known series orders to carry out the operation.

    ``deficit`` is the number of additional known orders that would have
    been needed, when that number is determined.
    """

    def __init__(self, message: str, deficit: int | None = None):
        self.deficit = deficit
        super().__init__(message)


class BoundExceeded(SkewError):
    """A bounded search ran out of candidates without deciding the question."""

    def __init__(self, bound, message: str | None = None):
        self.bound = bound
        super().__init__(message or f"search bound {bound} exhausted")


class ConstIdealUnderestimate(SkewError):
    """The candidate constant ideal was too small; carries the enlargement.

    ``enlarged`` is a strictly larger integral ideal that is still a lower
    bound for the true constant ideal; ``order`` is the series order at
    which the defect was detected and ``witness`` the offending lowest
    coefficient.
    """

    def __init__(self, enlarged, order: int, witness):
        self.enlarged = enlarged
        self.order = order
        self.witness = witness
        super().__init__(
            f"constant ideal underestimated, enlarged at order {order}"
        )


class SigmaClassObstruction(SkewError):
    """A needed principal generator does not exist (or was not found).

    Raised by the row-completion engine when the twisted class condition
    fails, i.e. some fractional ideal of the form used for the scaling
    constants admits no principal generator within reach.
    """

    def __init__(self, ideal, message: str | None = None):
        self.ideal = ideal
        super().__init__(message or f"no principal generator found for {ideal}")


class NotUnimodular(SkewError):
    """The supplied row and column do not multiply to 1."""


class SingularError(SkewError):
    """A series matrix required to be invertible is singular."""


class NotTwoSided(SkewError):
    """The ideal is not fixed by the automorphism, so its extension is one-sided."""


class UnsupportedDomain(SkewError):
    """The requested computation is not available for this domain.

    Real quadratic class-group queries are the documented case: honest
    refusal instead of an unverified answer.
    """
