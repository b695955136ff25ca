"""
Exception types raised by the spintherm library
"""


class SpinThermError(Exception):
    """Base class for all spintherm errors"""


class ArgumentError(SpinThermError, ValueError):
    """An argument is out of bounds or inconsistent with the ensemble"""


class DomainError(SpinThermError, ValueError):
    """A mathematical precondition does not hold (e.g. tau <= 0)"""


class CapacityError(SpinThermError):
    """A size guard was exceeded"""


class InfeasibleError(SpinThermError, RuntimeError):
    """The entropy balance has no bracketed root or bisection did not converge"""
