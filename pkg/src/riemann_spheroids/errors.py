"""Exception types raised by the library."""


class SpheroidError(Exception):
    """Base class for all library errors."""


class DomainError(SpheroidError, ValueError):
    """An argument lies outside the domain where a formula is valid."""


class NonConvergence(SpheroidError, RuntimeError):
    """An iterative numerical routine exhausted its budget."""


class NoSignChange(SpheroidError, ValueError):
    """A root bracket does not enclose a sign change."""


class NotSkew(SpheroidError, ValueError):
    """A matrix expected to be skew-symmetric is not."""


class UnsupportedPair(SpheroidError, ValueError):
    """No closed form is available for the requested J(k, r) integral."""
