"""Exception types shared across the package."""


class TFLocError(Exception):
    """Base class for all errors raised by tfloc."""


class DimensionError(TFLocError, ValueError):
    """Inputs have incompatible or invalid dimensions."""


class InvalidParameterError(TFLocError, ValueError):
    """A parameter is outside its admissible range."""


class VanishingAmbiguityError(TFLocError, ArithmeticError):
    """The cross-ambiguity of the windows vanishes where an inverse is required.

    Attributes
    ----------
    zero_set : list of tuple
        Phase points ``(x, omega)`` where the ambiguity is numerically zero.
    """

    def __init__(self, message, zero_set=()):
        super().__init__(message)
        self.zero_set = list(zero_set)


class DegenerateGridWarning(UserWarning):
    """Emitted when a grid is identically zero, so every point is a zero."""
