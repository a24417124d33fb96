"""Exception hierarchy shared by every foldweb module."""


class FoldwebError(Exception):
    """Base class for all foldweb errors."""


class RegistryError(FoldwebError):
    pass


class DegreeViolation(FoldwebError):
    pass


class NotFound(FoldwebError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return Exception.__str__(self)


class ValidationError(FoldwebError):
    """Raised when an operation needs a valid diagram or circuit.

    ``violations`` holds the individual problems that were found.
    """

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class SchemaError(FoldwebError, ValueError):
    pass


class OddDistanceRequired(FoldwebError, ValueError):
    pass


class AnticommutesWithMeasurement(FoldwebError):
    pass


class UnsupportedPlacement(FoldwebError):
    pass


class ForcedContradiction(FoldwebError):
    pass


class ShapeError(FoldwebError, ValueError):
    pass


class TooLarge(FoldwebError):
    pass


class WebInvalid(FoldwebError):
    pass


class OverlayMismatch(FoldwebError):
    pass
