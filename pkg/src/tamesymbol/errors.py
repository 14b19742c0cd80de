"""Exception hierarchy shared by all modules."""


class TameSymbolError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(TameSymbolError, ValueError):
    pass


class CapExceeded(TameSymbolError):
    pass


class NotASubfield(TameSymbolError, ValueError):
    pass


class NotAGenerator(TameSymbolError, ValueError):
    pass


class ZeroInput(TameSymbolError, ZeroDivisionError):
    pass


class GeneratorNotInGroup(TameSymbolError, ValueError):
    pass


class InfiniteGroup(TameSymbolError, ValueError):
    pass


class NotIsotropic(TameSymbolError, ValueError):
    pass


class HypothesisFailed(TameSymbolError):
    """Raised when a hypothesis of the filtration statement does not hold.

    The partially computed result is attached as ``report`` so callers can
    still inspect the filtration.
    """

    def __init__(self, which, report=None):
        super().__init__(f"hypothesis ({which}) failed")
        self.which = which
        self.report = report


class NotInAPrime(TameSymbolError, ValueError):
    pass


class InsufficientPrecision(TameSymbolError):
    """Retryable: the caller should re-expand at a higher precision."""


class ZeroFunction(TameSymbolError, ValueError):
    pass


class DegreeNonzero(TameSymbolError, ValueError):
    pass


class DegenerateEvaluation(TameSymbolError):
    pass


class ResidueBoundExceeded(TameSymbolError):
    pass


class WitnessSearchExhausted(TameSymbolError):
    pass


class FixtureError(TameSymbolError, ValueError):
    """Malformed fixture file or literal."""
