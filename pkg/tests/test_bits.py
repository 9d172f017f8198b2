import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from imddsim.bits import _PRBS_TAPS, BitSequence, prbs_generate, random_payload
from imddsim.errors import ConfigurationError


def naive_lfsr(order, seed, n_bits):
    """Bit-at-a-time Fibonacci LFSR: output MSB, feedback XOR of taps into LSB."""
    taps = _PRBS_TAPS[order]
    mask = (1 << order) - 1
    state = seed & mask
    out = np.empty(n_bits, dtype=np.uint8)
    for i in range(n_bits):
        out[i] = (state >> (order - 1)) & 1
        fb = 0
        for t in taps:
            fb ^= (state >> (t - 1)) & 1
        state = ((state << 1) | fb) & mask
    return out


@pytest.mark.parametrize("order", [7, 15, 23, 31])
@pytest.mark.parametrize("seed", [1, 2, 0x55AA])
def test_matches_naive_lfsr(order, seed):
    n = 600
    fast = prbs_generate(order, seed, n)
    assert np.array_equal(fast.bits, naive_lfsr(order, seed, n))


def test_prbs15_period():
    period = 2**15 - 1
    bits = prbs_generate(15, 1, 2 * period + 64).bits
    assert np.array_equal(bits[:period], bits[period : 2 * period])
    # no shorter period at a few plausible divisors
    for cand in (3, 5, 7, 31, 151, 4681):
        assert not np.array_equal(bits[:cand], bits[cand : 2 * cand])


def test_prbs7_all_windows_once():
    # every nonzero 7-bit window occurs exactly once per period
    bits = prbs_generate(7, 1, 127 + 6).bits
    windows = set()
    for i in range(127):
        w = 0
        for b in bits[i : i + 7]:
            w = (w << 1) | int(b)
        windows.add(w)
    assert len(windows) == 127
    assert 0 not in windows


def test_seeds_differ():
    a = prbs_generate(15, 1, 10).bits
    b = prbs_generate(15, 2, 10).bits
    assert not np.array_equal(a, b)
    assert np.array_equal(a, naive_lfsr(15, 1, 10))
    assert np.array_equal(b, naive_lfsr(15, 2, 10))


def test_reproducible_and_tiled():
    a = prbs_generate(15, 77, 100_000).bits
    b = prbs_generate(15, 77, 100_000).bits
    assert np.array_equal(a, b)
    period = 2**15 - 1
    assert np.array_equal(a[:period], a[period : 2 * period])


@given(order=st.sampled_from([7, 15, 23]), seed=st.integers(1, 2**7 - 1), n=st.integers(1, 200))
@settings(max_examples=40, deadline=None)
def test_prefix_consistency(order, seed, n):
    long = prbs_generate(order, seed, 400).bits
    short = prbs_generate(order, seed, n).bits
    assert np.array_equal(short, long[:n])


def test_invalid_arguments():
    with pytest.raises(ConfigurationError):
        prbs_generate(8, 1, 10)
    with pytest.raises(ConfigurationError):
        prbs_generate(15, 0, 10)
    with pytest.raises(ConfigurationError):
        prbs_generate(15, 1 << 15, 10)  # reduces to zero state
    with pytest.raises(ConfigurationError):
        prbs_generate(15, 1, 0)


def test_bit_sequence_validation():
    with pytest.raises(ConfigurationError):
        BitSequence(np.array([0, 1, 2]))
    with pytest.raises(ConfigurationError):
        BitSequence(np.array([]))
    assert len(random_payload(64, seed=3)) == 64
