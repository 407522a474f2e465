"""Exception hierarchy for filbert.

Verification failures are reported as data; these are raised only when an
operation cannot produce a meaningful result."""


class FilbertError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FilbertError):
    """Argument outside the domain of a formula (negative index, zero factor)."""


class InexactDivision(FilbertError):
    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class IntegralityViolation(FilbertError):
    """A quantity proved integral came out with a denominator."""

    def __init__(self, message, value=None, where=None):
        super().__init__(message)
        self.value = value
        self.where = where


class SingularError(FilbertError):
    pass


class DimensionError(FilbertError):
    pass


class UnsupportedElementKind(FilbertError):
    pass


class InternalError(FilbertError):
    """An internal consistency assertion failed."""


class ConfigError(FilbertError):
    pass
