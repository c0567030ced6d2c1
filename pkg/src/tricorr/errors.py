"""Exception types shared across the package."""


class TricorrError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(TricorrError):
    """Matrix has the wrong shape (non-square or odd dimension)."""


class DomainError(TricorrError):
    """A parameter lies outside its admissible range."""


class ValidationError(TricorrError):
    """An input matrix fails a structural requirement (e.g. non-unitary)."""


class SingularBlockError(TricorrError):
    """A sub-block that must be inverted is numerically singular."""


class NumericError(TricorrError):
    """An eigenvalue solve or similar numerical routine failed."""


class UnsupportedFormulaError(TricorrError):
    """No closed-form expression is catalogued for the requested measure."""
