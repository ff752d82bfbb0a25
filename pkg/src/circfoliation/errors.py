"""Exception hierarchy shared by all modules."""


class FoliationError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpec(FoliationError):
    pass


class DegenerateJump(FoliationError):
    """A jump reduces to 0 mod n, which would put a loop in the cover."""


class DisconnectedCover(FoliationError):
    pass


class TheoremDomain(FoliationError):
    """Two jumps of one fiber collide mod n; use the oracle instead."""


class PrecisionExhausted(FoliationError):
    pass


class NonIntegerCoefficients(FoliationError):
    pass


class NotDivisible(FoliationError):
    pass


class NotPerfectSquare(FoliationError):
    pass


class FactorizationLimit(FoliationError):
    pass


class UnitCircleRoot(FoliationError):
    pass


class QuadratureNotConverged(FoliationError):
    pass


class HypothesisViolated(FoliationError):
    """The jump gcd is not 1, so the asymptotic results do not apply."""
