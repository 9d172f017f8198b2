"""Sampled waveforms and small spectral measurement helpers.

A :class:`Waveform` is the currency passed between every stage of the link:
a uniformly sampled amplitude sequence plus its sample rate and a domain tag
distinguishing real electrical signals from complex optical envelopes.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

ELECTRICAL = "electrical-real"
OPTICAL = "optical-complex-envelope"


@dataclass(frozen=True)
class Waveform:
    """Uniformly sampled signal.

    samples : 1-D float64 array for electrical-real signals, complex128 for
        optical complex envelopes. Treated as immutable after construction.
    sample_rate : sampling rate in Hz, > 0.
    domain_tag : ELECTRICAL or OPTICAL.
    """

    samples: np.ndarray
    sample_rate: float
    domain_tag: str = ELECTRICAL

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ConfigurationError("sample_rate must be > 0")
        if self.domain_tag not in (ELECTRICAL, OPTICAL):
            raise ConfigurationError(f"unknown domain_tag {self.domain_tag!r}")
        samples = np.asarray(self.samples)
        if samples.ndim != 1 or samples.size == 0:
            raise ConfigurationError("samples must be a non-empty 1-D array")
        if self.domain_tag == ELECTRICAL:
            if np.iscomplexobj(samples):
                if np.any(samples.imag != 0.0):
                    raise ConfigurationError(
                        "electrical-real waveform has nonzero imaginary part"
                    )
                samples = samples.real
            samples = np.ascontiguousarray(samples, dtype=np.float64)
        else:
            samples = np.ascontiguousarray(samples, dtype=np.complex128)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))

    def __len__(self):
        return self.samples.size

    @property
    def duration(self):
        return self.samples.size / self.sample_rate

    def power(self):
        """Mean |x|^2."""
        return float(np.mean(np.abs(self.samples) ** 2))


def electrical(samples, sample_rate):
    return Waveform(np.asarray(samples, dtype=np.float64), sample_rate, ELECTRICAL)


def optical(samples, sample_rate):
    return Waveform(np.asarray(samples, dtype=np.complex128), sample_rate, OPTICAL)


def spectrum(w: Waveform):
    """Two-sided amplitude spectrum: (frequencies, fft/N), fftshifted."""
    n = len(w)
    freqs = np.fft.fftshift(np.fft.fftfreq(n, d=1.0 / w.sample_rate))
    amp = np.fft.fftshift(np.fft.fft(w.samples)) / n
    return freqs, amp


def power_spectrum_db(w: Waveform):
    """Two-sided power spectrum in dB (relative, 1e-30 floor)."""
    freqs, amp = spectrum(w)
    return freqs, 10.0 * np.log10(np.abs(amp) ** 2 + 1e-30)


def tone_power(w: Waveform, freq_hz: float):
    """Power of the spectral component nearest freq_hz.

    For a real waveform the positive- and negative-frequency halves are
    combined so a full-scale real tone of amplitude A reports A^2/2.
    """
    n = len(w)
    amp = np.fft.fft(w.samples) / n
    freqs = np.fft.fftfreq(n, d=1.0 / w.sample_rate)
    idx = int(np.argmin(np.abs(freqs - freq_hz)))
    p = np.abs(amp[idx]) ** 2
    if w.domain_tag == ELECTRICAL and idx != 0:
        p *= 2.0
    return float(p)


def band_power(w: Waveform, f_lo: float, f_hi: float):
    """Integrated power in [f_lo, f_hi] (two-sided frequency axis)."""
    n = len(w)
    amp = np.fft.fft(w.samples) / n
    freqs = np.fft.fftfreq(n, d=1.0 / w.sample_rate)
    sel = (freqs >= f_lo) & (freqs <= f_hi)
    return float(np.sum(np.abs(amp[sel]) ** 2))
