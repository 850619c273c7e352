"""Exception types raised across the package."""


class HolomorphError(Exception):
    """Base class for all package errors."""


class GroupTableError(HolomorphError, ValueError):
    pass


class NotClosed(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NotAssociative(GroupTableError):
    pass


class NoInverse(GroupTableError):
    pass


class ClosureTooLarge(HolomorphError):
    pass


class GroupTooLarge(HolomorphError):
    pass


class CapExceeded(HolomorphError):
    pass


class BudgetExceeded(HolomorphError):
    pass


class UnknownFamily(HolomorphError, ValueError):
    pass


class ParameterOutOfRange(HolomorphError, ValueError):
    pass


class NotPrime(HolomorphError, ValueError):
    pass


class NotNormal(HolomorphError):
    pass


class NotCharacteristic(HolomorphError):
    pass


class NotInvariant(HolomorphError):
    pass


class GroupMismatch(HolomorphError):
    pass


class NotSimple(HolomorphError, ValueError):
    pass


class NotIrreducible(HolomorphError, ValueError):
    pass


class OrderMismatch(HolomorphError):
    """A constructed group does not have the order its formula predicts."""


class ParseError(HolomorphError, ValueError):
    pass
