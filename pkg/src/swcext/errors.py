class SwcError(Exception):
    """Base class for library errors."""


class AlgebraError(SwcError, ValueError):
    pass


class GuardError(SwcError):
    """An enumeration would exceed its configured size guard."""


class CodeError(SwcError, ValueError):
    pass
