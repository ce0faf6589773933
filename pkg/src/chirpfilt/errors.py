"""Exception types raised across the package.

Validation problems derive from :class:`ValueError` so callers can catch them
generically; file problems derive from :class:`IoFailure` (an ``OSError``).
"""


class LengthMismatch(ValueError):
    pass


class InvalidParams(ValueError):
    pass


class IndexOutOfRange(IndexError, ValueError):
    pass


class EmptySpectrum(ValueError):
    pass


class NoSignificantPeak(ValueError):
    """The strongest grid entry is not dominant enough to be a component.

    The offending peak is kept on ``self.peak`` for diagnostics.
    """

    def __init__(self, message, peak=None):
        super().__init__(message)
        self.peak = peak


class ConfigMismatch(ValueError):
    pass


class TooShort(ValueError):
    pass


class ZeroSignal(ValueError):
    pass


class EmptyMethodSet(ValueError):
    pass


class IoFailure(OSError):
    pass


class UnsupportedFormat(IoFailure):
    pass


class ParseFailure(IoFailure):
    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row
