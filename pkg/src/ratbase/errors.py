"""Exception hierarchy shared by the library and the command line."""


class RatBaseError(Exception):
    """Base class for every error raised by :mod:`ratbase`."""


class InvalidBase(RatBaseError, ValueError):
    pass


class NotCoprime(InvalidBase):
    pass


class OrderViolation(InvalidBase):
    pass


class DigitError(RatBaseError, ValueError):
    pass


class DigitNotInB(DigitError):
    pass


class DigitNotInAq(DigitError):
    pass


class PreconditionViolated(RatBaseError, ValueError):
    pass


class NotAccepted(RatBaseError, ValueError):
    """A word has no run in the automaton it was checked against."""


class InternalInconsistency(RatBaseError, RuntimeError):
    """Two definitions that must agree did not. Seeing this is a bug."""


class WordSyntaxError(RatBaseError, ValueError):
    pass
