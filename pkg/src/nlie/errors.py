"""Exception hierarchy shared by every module of the package."""


class NLieError(Exception):
    """Base class for all errors raised by :mod:`nlie`."""


class ParseError(NLieError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotPrime(NLieError, ValueError):
    pass


class FieldMismatch(NLieError, ValueError):
    pass


class DivisionByZero(NLieError, ZeroDivisionError):
    pass


class AmbientMismatch(NLieError, ValueError):
    pass


class DimensionMismatch(NLieError, ValueError):
    pass


class SingularMatrix(NLieError, ValueError):
    pass


class IndexOutOfRange(NLieError, ValueError):
    pass


class RepeatedIndex(NLieError, ValueError):
    pass


class DuplicateKey(NLieError, ValueError):
    pass


class ArityMismatch(NLieError, ValueError):
    pass


class NotAnIdeal(NLieError, ValueError):
    pass


class InvalidAlgebra(NLieError, ValueError):
    pass


class FilippovViolation(InvalidAlgebra):
    """The bracket table fails the Filippov identity on some basis instance."""

    def __init__(self, violations, line=None):
        self.violations = list(violations)
        x, y = self.violations[0]
        msg = f"Filippov identity fails at x={x} y={y}"
        if len(self.violations) > 1:
            msg += f" (and {len(self.violations) - 1} more instances)"
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)


class NotNilpotent(NLieError, ValueError):
    pass


class InvalidParams(NLieError, ValueError):
    pass


class OutOfCatalog(NLieError, ValueError):
    pass


class InconsistentInvariants(NLieError, ArithmeticError):
    pass


class FieldNotFinite(NLieError, ValueError):
    pass


class ReductionError(NLieError, ValueError):
    """A rational structure constant has a denominator divisible by p."""
