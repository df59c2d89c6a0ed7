"""Exception types raised by the engine."""


class UltrawaveError(Exception):
    """Base class for all engine errors."""


class NotAUnitError(UltrawaveError):
    """Modular inversion requested for an element of nonzero valuation."""


class BadWindowError(UltrawaveError):
    """An enumeration window is empty or inverted."""


class BadPhaseError(UltrawaveError):
    """A character phase whose denominator is not a power of p."""


class ConductorTooLargeError(UltrawaveError):
    """Float embedding requested for a cyclotomic conductor beyond 2**20."""


class ZeroFunctionError(UltrawaveError):
    """Operation undefined for the zero step function."""


class ZeroDilationError(UltrawaveError):
    """Group element with dilation component zero."""


class DivergentError(UltrawaveError):
    """Admissibility integral diverges (nonzero mean wavelet)."""


class NotS0Error(UltrawaveError):
    """Operation requires a test function with vanishing integral."""


class WindowTooSmallError(UltrawaveError):
    """A nonzero coefficient was detected on a sampling window boundary."""


class NotTightError(UltrawaveError):
    """Frame verification found a non-constant frame-sum ratio."""

    def __init__(self, message, ratios=None):
        super().__init__(message)
        self.ratios = ratios


class WindowNotClosedError(UltrawaveError):
    """Kernel window does not contain the two-step dependency set."""


class BadParamError(UltrawaveError):
    """Invalid construction parameter."""
