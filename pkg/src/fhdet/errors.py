"""Exception hierarchy shared by the float and exact layers."""


class FHDetError(Exception):
    """Base class for all errors raised by fhdet."""


class PoleError(FHDetError, ValueError):
    """A gamma argument landed on (or within tolerance of) a non-positive integer."""

    def __init__(self, message, argument=None, offset=None):
        super().__init__(message)
        self.argument = argument
        self.offset = offset


class DenominatorZero(FHDetError, ZeroDivisionError):
    """An exact formula hit one of its excluded hyperplanes.

    ``hyperplane`` is a readable label such as ``"alpha+2=0"``.
    """

    def __init__(self, message, hyperplane=None):
        super().__init__(message)
        self.hyperplane = hyperplane


class ConfigError(FHDetError, ValueError):
    """Invalid configuration for a verification run."""
