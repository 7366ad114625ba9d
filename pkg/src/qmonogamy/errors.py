"""Exception types raised across the package."""


class QMonogamyError(Exception):
    """Base class for all package errors."""


class ZeroState(QMonogamyError, ValueError):
    pass


class BadSubset(QMonogamyError, ValueError):
    pass


class BadPermutation(QMonogamyError, ValueError):
    pass


class BadIndex(QMonogamyError, ValueError):
    pass


class BadDim(QMonogamyError, ValueError):
    pass


class BadParam(QMonogamyError, ValueError):
    pass


class NotUnitary(QMonogamyError, ValueError):
    pass


class NumericalFailure(QMonogamyError, ArithmeticError):
    pass


class InternalMismatch(QMonogamyError, AssertionError):
    """Two routes to the same invariant disagree; points at a bug, not bad input."""


class StaleReport(QMonogamyError, ValueError):
    pass


class OptimizerDidNotImprove(UserWarning):
    """No restart of the convex-roof search beat the eigen-ensemble value."""
