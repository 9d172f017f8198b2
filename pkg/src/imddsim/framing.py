"""Frame descriptors binding transmitted truth to received samples."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .waveform import Waveform


@dataclass(frozen=True)
class FrameDescriptor:
    """Everything the receiver and BER counter need to know about a frame.

    Sample indices are on the transmit-waveform grid. `training_symbols`
    is format specific: a real symbol array for PAM-4, a complex
    (n_training, n_carriers) matrix for DMT, a per-band list of complex
    arrays for CAP. `meta` carries format extras (loading table, band
    orders, symbol counts).
    """

    format_tag: str
    payload_bits: np.ndarray
    training_start: int
    payload_start: int
    frame_end: int
    training_symbols: object
    ref_waveform: Waveform
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.training_start <= self.payload_start <= self.frame_end:
            raise ConfigurationError("frame boundaries must be ordered and non-negative")
        object.__setattr__(
            self, "payload_bits", np.ascontiguousarray(self.payload_bits, dtype=np.uint8)
        )
