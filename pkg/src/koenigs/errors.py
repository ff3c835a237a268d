"""Exception hierarchy for the koenigs package."""


class KoenigsError(Exception):
    """Base class for all errors raised by this package."""


class OrderClaimViolated(KoenigsError):
    """A coefficient below a claimed vanishing order is nonzero."""


class DegreeOutOfRange(KoenigsError):
    """A truncation degree lies outside the stored coefficient range."""


class MajorantOverflow(KoenigsError):
    """A majorant evaluation left the finite double range."""


class ConstantTermNonzero(KoenigsError):
    """The inner series of a composition has a nonzero constant term."""


class ZeroMultiplier(KoenigsError):
    """The linear coefficient of a map to invert or linearize is zero."""


class HypothesisFailed(KoenigsError):
    """A certificate hypothesis does not hold for the supplied data."""


class ResonantDivisor(KoenigsError):
    """Some homological divisor lambda^m - lambda vanishes.

    The offending degree is available as ``.degree``.
    """

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"resonant divisor at degree {degree}")


class RootOfUnityDivisor(KoenigsError):
    """A small divisor needed by a Bruno sum is exactly zero."""


class ScheduleCollapse(KoenigsError):
    """A stage constant of the quadratic radius schedule vanished."""


class NoValidRadius(KoenigsError):
    """No grid radius r with F_hat(r) <= r was found."""


class NotHyperbolic(KoenigsError):
    """A hyperbolic-only operation received a multiplier on the unit circle."""


class StructuralOrderViolation(KoenigsError):
    """A coefficient that should vanish by the order bookkeeping is too large."""
