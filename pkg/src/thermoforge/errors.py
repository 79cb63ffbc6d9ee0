"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`ThermoError`,
and carries a short machine-readable ``reason`` (the class name unless a
more specific one is given). The CLI maps these to exit code 2.
"""

from __future__ import annotations


class ThermoError(ValueError):
    """Base class for all domain rejections."""

    def __init__(self, message: str = "", reason: str | None = None):
        super().__init__(message or type(self).__name__)
        self.reason = reason or type(self).__name__


class NotNormalized(ThermoError):
    pass


class NegativeEntry(ThermoError):
    pass


class DimensionMismatch(ThermoError):
    pass


class IndexOutOfRange(ThermoError):
    pass


class LambdaOutOfRange(ThermoError):
    pass


class NotStochastic(ThermoError):
    pass


class NotDStochastic(ThermoError):
    pass


class NotPositive(ThermoError):
    """An equilibrium distribution with a zero entry."""


class OutOfDomain(ThermoError):
    pass


class CapExceeded(ThermoError):
    pass


class FactorialBlowup(CapExceeded):
    pass


class NotAnExtreme(ThermoError):
    """The matrix breaks the structure every extreme point must have.

    ``clause`` names the first check that failed.
    """

    def __init__(self, clause: str, message: str = ""):
        super().__init__(message or f"not an extreme point: {clause}")
        self.clause = clause


class UnsupportedEquilibrium(ThermoError):
    """The sorted equilibrium is not of the form (d0, ..., d0, d1)."""


class InternalInfeasible(ThermoError):
    """An LP that must be feasible was not. Always a bug."""


class NotMajorized(ThermoError):
    pass


class TooSmall(ThermoError):
    pass


class FixtureSelfCheckFailed(ThermoError):
    pass


class Rejected(ThermoError):
    """Length-one membership rejection.

    ``reason`` is one of ``NotStochastic``, ``DetailedBalanceFails``,
    ``LambdaInconsistent`` or ``LambdaOutOfRange``.
    """

    def __init__(self, reason: str, message: str = ""):
        super().__init__(message or reason, reason=reason)
