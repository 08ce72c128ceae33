"""Exception hierarchy shared by all capforge modules."""


class CapforgeError(Exception):
    """Base class for every error raised by capforge."""


class DivisionByZero(CapforgeError, ZeroDivisionError):
    pass


class NotFound(CapforgeError):
    pass


class ZeroVector(CapforgeError, ValueError):
    pass


class DuplicatePoint(CapforgeError, ValueError):
    pass


class DimensionMismatch(CapforgeError, ValueError):
    pass


class IntegralityViolated(CapforgeError):
    """A projectivity does not send normalized points to normalized points."""


class NotAnArc(CapforgeError, ValueError):
    pass


class HypothesisViolated(CapforgeError):
    """A construction's input fails one of its hypotheses.

    ``hypothesis`` names the condition that failed.
    """

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)


class SearchExhausted(CapforgeError):
    pass


class NoValidW(CapforgeError):
    pass


class PreconditionViolated(CapforgeError, ValueError):
    pass


class BadParameters(CapforgeError, ValueError):
    pass


class TooSmall(CapforgeError, ValueError):
    pass


class TooLarge(CapforgeError, ValueError):
    pass


class VerificationFailed(CapforgeError):
    """A built object failed a check its construction guarantees."""
