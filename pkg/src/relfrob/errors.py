"""Exception hierarchy shared across the package."""


class RelFrobError(Exception):
    """Base class for all errors raised by relfrob."""


class NotRational(RelFrobError, ValueError):
    pass


class ZeroBase(RelFrobError, ZeroDivisionError):
    pass


class NonPolynomial(RelFrobError, ValueError):
    pass


class TooLarge(RelFrobError):
    pass


class WorkBoundExceeded(RelFrobError):
    def __init__(self, work, bound):
        super().__init__(f"estimated work {work} exceeds bound {bound}")
        self.work = work
        self.bound = bound


class InternalInconsistency(RelFrobError, ArithmeticError):
    """A quantity the theory guarantees to be integral/consistent was not."""


class ParseError(RelFrobError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
