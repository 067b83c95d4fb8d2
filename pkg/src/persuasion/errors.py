"""Exception hierarchy shared by every module of the package."""


class PersuasionError(Exception):
    """Base class for all errors raised by this package."""


class InvalidRational(PersuasionError, ValueError):
    pass


class UndefinedPosterior(PersuasionError, ZeroDivisionError):
    """The observation leaves no world with positive probability."""


class CapExceeded(PersuasionError):
    """An exhaustive sweep would exceed the configured enumeration cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"enumeration over 2^{size} exceeds cap 2^{cap}")
        self.size = size
        self.cap = cap


class NotStrongInstance(PersuasionError, ValueError):
    pass


class AssumptionViolated(PersuasionError):
    """The intersection of all events carries no probability mass."""


class InvalidECI(PersuasionError, ValueError):
    pass


class InvalidInstance(PersuasionError, ValueError):
    """An instance failed semantic validation; ``violations`` lists why."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ParseError(PersuasionError, ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class ReductionInconsistency(PersuasionError, AssertionError):
    """Two formulations of the same reduction quantity disagreed."""
