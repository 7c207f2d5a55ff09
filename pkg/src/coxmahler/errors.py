"""Exception hierarchy shared by every module of the package."""


class CoxMahlerError(Exception):
    """Base class for all errors raised by coxmahler."""


class DomainError(CoxMahlerError, ValueError):
    """An argument lies outside the domain of the operation."""


class NotDivisible(CoxMahlerError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class ConvergenceFailure(CoxMahlerError, RuntimeError):
    """The root finder hit its iteration cap before meeting the tolerance."""


class MalformedQuiver(DomainError):
    pass


class NotAPoset(DomainError):
    pass


class NotUnimodular(DomainError):
    pass


class DegreeMismatch(DomainError):
    pass


class NotRealRooted(DomainError):
    pass


class MissingRepresentation(DomainError):
    pass


class InvalidSchedule(DomainError):
    pass


class SizeLimit(DomainError):
    pass
