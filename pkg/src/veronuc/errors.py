"""Exception hierarchy shared by all modules."""


class VeronucError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeCharacteristic(VeronucError, ValueError):
    pass


class ReducibleModulus(VeronucError, ValueError):
    pass


class FieldTooLarge(VeronucError, ValueError):
    pass


class FieldMismatch(VeronucError, TypeError):
    pass


class DivisionByZero(VeronucError, ZeroDivisionError):
    pass


class IndexOutOfRange(VeronucError, IndexError):
    pass


class AmbientMismatch(VeronucError, ValueError):
    pass


class EnumerationTooLarge(VeronucError, ValueError):
    pass


class HypothesisViolated(VeronucError, ValueError):
    pass


class ParamOutOfRange(VeronucError, ValueError):
    pass


class PreconditionFailed(VeronucError, RuntimeError):
    pass
