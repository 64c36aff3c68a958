"""Exception types raised by the library."""


class WdfError(Exception):
    """Base class for all library errors."""


class UnpreparedError(WdfError):
    """A node was asked to process waves before its sample rate was set."""


class WiringError(WdfError):
    """Invalid tree construction: double parent, cycle, or port mismatch."""


class ParameterError(WdfError, ValueError):
    """A parameter value is outside its declared range."""

    def __init__(self, name, value, lo=None, hi=None):
        self.name = name
        self.value = value
        self.lo = lo
        self.hi = hi
        if lo is None and hi is None:
            msg = f"parameter {name!r}: invalid value {value!r}"
        else:
            msg = f"parameter {name!r}: value {value!r} outside range [{lo}, {hi}]"
        super().__init__(msg)


class SingularNetworkError(WdfError):
    """A junction or net description has a floating node or singular matrix."""

    def __init__(self, message, node=None):
        self.node = node
        super().__init__(message)


class WavFormatError(WdfError):
    """Unreadable or unsupported WAV file."""
