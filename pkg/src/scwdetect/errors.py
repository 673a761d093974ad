"""Exception types raised by the simulator."""


class InvalidArgumentError(ValueError):
    """An argument lies outside the domain an operation supports."""


class IncompatibleGridError(ValueError):
    """Two fields or tones do not share the same harmonic spacing."""


class BandwidthError(ValueError):
    """The detector is too slow to observe the requested beat signal."""
