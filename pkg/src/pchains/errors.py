"""Exception hierarchy shared by every module.

Anything raised for bad input derives from :class:`GroupError`, which the
CLI maps to exit code 2.
"""

from __future__ import annotations


class GroupError(ValueError):
    """Base class for input and precondition failures."""


# table / generator ingestion
class NoIdentity(GroupError):
    pass


class NotClosed(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoInverse(GroupError):
    pass


class CapExceeded(GroupError):
    pass


class DegreeMismatch(GroupError):
    pass


class UnknownSpec(GroupError):
    pass


class ParameterOutOfRange(GroupError):
    pass


class GroupFileError(GroupError):
    pass


class NotPrime(GroupError):
    pass


# subgroup relations
class NotContained(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotASubgroupOfQuotient(GroupError):
    pass


# p-subgroup machinery
class PrimeDoesNotDivideOrder(GroupError):
    pass


class NotPPower(GroupError):
    pass


class NextPowerDoesNotDivide(GroupError):
    pass


class BaseOrderMismatch(GroupError):
    pass


class ChainNotSupported(GroupError):
    pass


class InvalidChainSpec(GroupError):
    pass


class OrderDoesNotDivide(GroupError):
    pass
