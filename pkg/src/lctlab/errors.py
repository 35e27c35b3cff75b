"""Exception and warning types shared across the package."""


class LCTError(Exception):
    """Base class for all package errors."""


class ParameterError(LCTError, ValueError):
    """Invalid or out-of-range parameter."""


class DegenerateParameterError(ParameterError):
    """Parameters sit on (or too close to) a pole of the transform family."""


class AliasingError(LCTError):
    """The sampled problem cannot represent the requested transform."""


class ResolutionError(AliasingError):
    """The grid is too coarse for the requested construction."""


class ConfigError(LCTError, ValueError):
    """A run configuration failed validation."""


class AliasingWarning(UserWarning):
    """Boundary mass or oscillation margins are uncomfortably small."""
