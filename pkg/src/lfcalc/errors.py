"""Exception hierarchy. Every error is a ``ValueError`` so callers can catch broadly."""


class LfcError(ValueError):
    pass


class DomainError(LfcError):
    pass


class PartitionError(LfcError):
    pass


class InvalidIntervalError(PartitionError):
    pass


class ZeroSizeError(PartitionError):
    pass


class PartitionMismatchError(PartitionError):
    pass


class DegreeOverflowError(LfcError):
    pass


class EvaluationError(LfcError):
    """Raised when a sampled function is non-finite; ``h`` is the offending step if known."""

    def __init__(self, message, h=None):
        super().__init__(message)
        self.h = h


class RegimeError(LfcError):
    pass


class PositivityError(LfcError):
    def __init__(self, message, index=None, function=None):
        super().__init__(message)
        self.index = index
        self.function = function


class DegenerateError(LfcError):
    pass


class ConfigError(LfcError):
    pass


class OracleSizeError(LfcError):
    pass
