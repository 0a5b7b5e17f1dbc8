"""Exception hierarchy.

Every failure of a documented precondition raises a subclass of
:class:`DomainError`; the CLI maps these to exit status 1.
"""


class DomainError(ValueError):
    """A documented precondition of an operation does not hold."""


class Singular(DomainError):
    """Linear system has no unique solution."""


class Inconsistent(DomainError):
    """Linear system has no solution."""


class DigitOutOfRange(DomainError):
    pass


class SpinOutOfRange(DomainError):
    pass


class ParityMismatch(DomainError):
    pass


class LimitExceeded(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass
