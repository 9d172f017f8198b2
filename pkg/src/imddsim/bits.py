"""Deterministic bit sources (maximal-length PRBS generators)."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# Fibonacci LFSR feedback taps (primitive polynomials x^n + x^m + 1).
_PRBS_TAPS = {7: (7, 6), 15: (15, 14), 23: (23, 18), 31: (31, 28)}


@dataclass(frozen=True)
class BitSequence:
    """A bit stream plus a record of where it came from."""

    bits: np.ndarray
    origin: str = "explicit"

    def __post_init__(self):
        bits = np.ascontiguousarray(np.asarray(self.bits), dtype=np.uint8)
        if bits.ndim != 1 or bits.size == 0:
            raise ConfigurationError("bit sequence must be non-empty and 1-D")
        if np.any(bits > 1):
            raise ConfigurationError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return self.bits.size

    def __array__(self, dtype=None):
        return self.bits if dtype is None else self.bits.astype(dtype)


def as_bits(x) -> np.ndarray:
    """Coerce a BitSequence or array-like of {0,1} to a uint8 array."""
    if isinstance(x, BitSequence):
        return x.bits
    return BitSequence(np.asarray(x)).bits


def prbs_generate(order: int, seed: int, n_bits: int) -> BitSequence:
    """Maximal-length PRBS from a Fibonacci LFSR.

    The output bit at step t is the register MSB; feedback (XOR of the two
    tap bits) enters at the LSB. The stream therefore obeys the recurrence
    o[j] = o[j-n] ^ o[j-m] for taps (n, m), which is what the block-wise
    generation below exploits. Same (order, seed) always yields the same
    stream.
    """
    if order not in _PRBS_TAPS:
        raise ConfigurationError(
            f"unsupported PRBS order {order}; choose from {sorted(_PRBS_TAPS)}"
        )
    if n_bits < 1:
        raise ConfigurationError("n_bits must be >= 1")
    state = int(seed) & ((1 << order) - 1)
    if state == 0:
        raise ConfigurationError("PRBS seed must be nonzero in the register width")

    period = (1 << order) - 1
    if n_bits > period and order <= 23:
        base = _lfsr_block(order, state, period)
        reps = -(-n_bits // period)
        bits = np.tile(base, reps)[:n_bits]
    else:
        bits = _lfsr_block(order, state, n_bits)
    return BitSequence(bits, origin=f"prbs({order}, seed={seed})")


def _lfsr_block(order: int, state: int, n_bits: int) -> np.ndarray:
    n, m = _PRBS_TAPS[order]
    out = np.empty(max(n_bits, n), dtype=np.uint8)
    for i in range(n):
        out[i] = (state >> (n - 1 - i)) & 1
    j = n
    while j < n_bits:
        k = min(m, n_bits - j)
        np.bitwise_xor(out[j - n : j - n + k], out[j - m : j - m + k], out=out[j : j + k])
        j += k
    return out[:n_bits]


def random_payload(n_bits: int, seed: int) -> BitSequence:
    """Payload bits for BER measurement: a seeded PRBS-23 slice."""
    s = (int(seed) % ((1 << 23) - 1)) + 1
    bits = prbs_generate(23, s, n_bits)
    return BitSequence(bits.bits, origin=f"prbs(23, seed={s})")
