"""Exception types shared across the package."""


class TweenlinesError(Exception):
    """Base class for all package-specific errors."""


class FormatError(TweenlinesError):
    """A file's contents do not match its declared format."""


class SizeMismatch(FormatError):
    """A binary payload disagrees with its header dimensions."""


class DimensionMissing(FormatError):
    """A line-JSON document lacks the required width/height fields."""


class DimensionMismatch(TweenlinesError):
    """Two arrays that must share dimensions do not."""


class LengthMismatch(DimensionMismatch):
    """Two sequences that must have equal length do not."""


class EmptyMask(TweenlinesError):
    """A foreground mask contains no foreground pixels."""


class DegenerateBox(TweenlinesError):
    """A bounding box extent is too small to define a canonical frame."""


class InvalidT(TweenlinesError, ValueError):
    """The requested number of in-between frames is not positive."""


class EmptyCorrespondence(TweenlinesError):
    """Matching produced zero usable line pairs."""
