"""Exception types shared across the simulator."""


class ImddsimError(Exception):
    """Base class for all simulator errors."""


class ConfigurationError(ImddsimError):
    """Invalid parameter value or malformed config file (CLI exit code 2)."""


class FramingError(ImddsimError):
    """Bit counts or frame layout inconsistent with the modulation format."""


class CapacityError(ImddsimError):
    """Loading target not achievable; carries the achievable maximum."""

    def __init__(self, message, achievable_bits=None):
        super().__init__(message)
        self.achievable_bits = achievable_bits


class SyncError(ImddsimError):
    """Frame synchronization failed (correlation peak below threshold)."""


class EqualizerDivergenceError(ImddsimError):
    """Adaptive equalizer diverged; suggests a smaller step size."""


class MeasurementError(ImddsimError):
    """A signal-quality measurement could not be made (e.g. zero power)."""


class NoCrossingError(ImddsimError):
    """A BER curve never crosses the requested threshold."""
