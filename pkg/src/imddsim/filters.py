"""Pulse shaping, rate conversion and low-pass filtering primitives."""

from functools import lru_cache
from math import gcd

import numpy as np
from scipy import signal

from .errors import ConfigurationError
from .waveform import Waveform


@lru_cache(maxsize=None)
def rrc_taps(rolloff: float, span: int, sps: int) -> np.ndarray:
    """Unit-energy root-raised-cosine taps, span*sps + 1 of them.

    Cascading two of these filters and sampling at symbol spacing is
    ISI-free up to truncation effects.
    """
    if not 0.0 < rolloff <= 1.0:
        raise ConfigurationError("rolloff must be in (0, 1]")
    if span < 4:
        raise ConfigurationError("span must be >= 4 symbols")
    if sps < 2:
        raise ConfigurationError("sps must be >= 2")
    beta = float(rolloff)
    n = span * sps + 1
    t = (np.arange(n) - (n - 1) / 2.0) / sps  # in symbol durations

    taps = np.empty(n)
    special = np.isclose(np.abs(t), 1.0 / (4.0 * beta), atol=1e-12)
    zero = np.isclose(t, 0.0, atol=1e-15)
    ordinary = ~(special | zero)

    tt = t[ordinary]
    num = np.sin(np.pi * tt * (1 - beta)) + 4 * beta * tt * np.cos(np.pi * tt * (1 + beta))
    den = np.pi * tt * (1 - (4 * beta * tt) ** 2)
    taps[ordinary] = num / den
    taps[zero] = 1.0 - beta + 4.0 * beta / np.pi
    taps[special] = (beta / np.sqrt(2.0)) * (
        (1 + 2.0 / np.pi) * np.sin(np.pi / (4 * beta))
        + (1 - 2.0 / np.pi) * np.cos(np.pi / (4 * beta))
    )
    taps /= np.sqrt(np.sum(taps**2))
    taps.setflags(write=False)
    return taps


def convolve_same(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Zero-padded convolution with the filter group delay compensated."""
    delay = (len(taps) - 1) // 2
    full = signal.fftconvolve(x, taps, mode="full")
    return full[delay : delay + len(x)]


def correlate_same(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Correlation aligned like convolve_same (matched filtering)."""
    return convolve_same(x, taps[::-1])


@lru_cache(maxsize=None)
def _resample_fir(max_rate: int) -> np.ndarray:
    half_len = 64 * max_rate
    taps = signal.firwin(2 * half_len + 1, 1.0 / max_rate, window=("kaiser", 14.0))
    taps.setflags(write=False)
    return taps


def resample(w: Waveform, p: int, q: int) -> Waveform:
    """Rational rate change by p/q with sharp polyphase anti-alias filtering."""
    if p < 1 or q < 1:
        raise ConfigurationError("resample factors must be >= 1")
    g = gcd(p, q)
    p, q = p // g, q // g
    if p == 1 and q == 1:
        return w
    # resample_poly scales the supplied FIR by `up` internally
    h = _resample_fir(max(p, q))
    y = signal.resample_poly(w.samples, p, q, window=h)
    return Waveform(y, w.sample_rate * p / q, w.domain_tag)


def resample_to(w: Waveform, target_rate: float) -> Waveform:
    """Resample to an exactly representable target rate."""
    from fractions import Fraction

    frac = Fraction(target_rate / w.sample_rate).limit_denominator(1 << 16)
    if abs(float(frac) * w.sample_rate - target_rate) > 1e-3:
        raise ConfigurationError(
            f"cannot express rate change {w.sample_rate} -> {target_rate} as a ratio"
        )
    return resample(w, frac.numerator, frac.denominator)


def bessel_lowpass(w: Waveform, cutoff_hz: float, order: int = 4) -> Waveform:
    """4th-order Bessel-type low-pass, -3 dB at cutoff_hz."""
    if cutoff_hz >= w.sample_rate / 2:
        return w
    sos = signal.bessel(order, cutoff_hz, btype="low", norm="mag", output="sos", fs=w.sample_rate)
    if np.iscomplexobj(w.samples):
        y = signal.sosfilt(sos, w.samples.real) + 1j * signal.sosfilt(sos, w.samples.imag)
    else:
        y = signal.sosfilt(sos, w.samples)
    return Waveform(y, w.sample_rate, w.domain_tag)
