"""Exception hierarchy shared by every stegkit module.

All errors derive from :class:`StegError` and from :class:`ValueError`, so
callers that only care about "bad input" can catch the builtin.
"""


class StegError(ValueError):
    """Base class for all stegkit errors."""

    kind = "validation"


class FormatError(StegError):
    """A file payload could not be decoded."""

    kind = "format"


class HeaderError(FormatError):
    """Malformed or unparseable file header."""


class TruncatedError(FormatError):
    """The payload ends before the header says it should."""


class UnsupportedFormatError(FormatError):
    """Well-formed but outside what the codec supports (magic, maxval, PCM layout)."""


class DimensionError(StegError):
    """Shapes, lengths or bit depths of two operands disagree."""

    kind = "dimension"


class CapacityError(StegError):
    """Payload does not fit into the carrier."""

    kind = "capacity"


class RecipeError(StegError):
    """Sidecar recipe is missing, corrupt, or does not match the stego."""

    kind = "recipe"
