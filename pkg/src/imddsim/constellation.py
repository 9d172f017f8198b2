"""Gray-labeled constellations and bit/symbol (de)mapping.

Labeling conventions (fixed, see README for the full table):

* PAM-M: binary-reflected Gray code along the amplitude axis, so for PAM-4
  the bit pairs map 00 -> -3u, 01 -> -1u, 11 -> +1u, 10 -> +3u with
  u = 1/sqrt(5).
* Square QAM (4, 16, 64, 256 = even bit counts): independent Gray-PAM per
  axis; the first half of each bit group selects the in-phase level, the
  second half the quadrature level.
* Odd bit counts (8, 32, 128): a 2^((b+1)/2) x 2^((b-1)/2) rectangular grid
  with independent per-axis Gray labels. The extra bit goes to the in-phase
  axis. A true cross constellation admits no perfect Gray labeling, so the
  rectangular construction is used to keep the one-bit nearest-neighbor
  property exact.

All constellations are normalized to unit mean symbol energy.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import as_bits
from .errors import ConfigurationError, FramingError

SUPPORTED_ORDERS = (2, 4, 8, 16, 32, 64, 128, 256)


def gray_code(i: int) -> int:
    return i ^ (i >> 1)


@dataclass(frozen=True)
class Constellation:
    order: int
    geometry: str  # 'PAM', 'QAM-square' or 'QAM-cross' (rectangular grid)
    points: np.ndarray  # complex128, index = integer bit label (MSB first)
    bits_per_symbol: int
    # per-axis demap structure: (levels scale u, level count) for I and Q
    _axis_i: tuple
    _axis_q: tuple  # (u, 1) for PAM

    def __post_init__(self):
        energy = float(np.mean(np.abs(self.points) ** 2))
        if abs(energy - 1.0) > 1e-12:
            raise ConfigurationError("constellation is not unit-energy")


@lru_cache(maxsize=None)
def constellation(order: int, geometry: str | None = None) -> Constellation:
    """Build the unit-energy Gray-labeled constellation for `order`."""
    if order not in SUPPORTED_ORDERS:
        raise ConfigurationError(f"unsupported constellation order {order}")
    k = int(np.log2(order))
    if geometry is None:
        if order == 2:
            geometry = "PAM"
        elif k % 2 == 0:
            geometry = "QAM-square"
        else:
            geometry = "QAM-cross"

    if geometry == "PAM":
        m = order
        levels = 2.0 * np.arange(m) - (m - 1)
        u = 1.0 / np.sqrt(np.mean(levels**2))
        points = np.zeros(order, dtype=np.complex128)
        for i in range(m):
            points[gray_code(i)] = levels[i] * u
        return Constellation(order, geometry, points, k, (u, m), (0.0, 1))

    ki = (k + 1) // 2
    kq = k - ki
    mi, mq = 1 << ki, 1 << kq
    li = 2.0 * np.arange(mi) - (mi - 1)
    lq = 2.0 * np.arange(mq) - (mq - 1)
    norm = np.sqrt(np.mean(li**2) + np.mean(lq**2))
    ui = 1.0 / norm
    points = np.zeros(order, dtype=np.complex128)
    for i in range(mi):
        for q in range(mq):
            label = (gray_code(i) << kq) | gray_code(q)
            points[label] = (li[i] + 1j * lq[q]) * ui
    return Constellation(order, geometry, points, k, (ui, mi), (ui, mq))


def map_symbols(bits, c: Constellation) -> np.ndarray:
    """Bit groups (MSB first) to constellation points."""
    b = as_bits(bits)
    k = c.bits_per_symbol
    if b.size % k:
        raise FramingError(f"bit count {b.size} not divisible by {k}")
    groups = b.reshape(-1, k)
    weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    idx = groups.astype(np.int64) @ weights
    return c.points[idx]


def demap_symbols(symbols, c: Constellation) -> np.ndarray:
    """Nearest-point decision + label unpack; exact inverse of map on clean input."""
    s = np.asarray(symbols)
    idx = decide_labels(s, c)
    k = c.bits_per_symbol
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8).reshape(-1)


@lru_cache(maxsize=None)
def _gray_table(m: int) -> np.ndarray:
    return np.array([gray_code(i) for i in range(m)], dtype=np.int64)


def decide_labels(symbols, c: Constellation) -> np.ndarray:
    """Integer bit labels of the nearest constellation points (grid slicing)."""
    s = np.asarray(symbols)
    ui, mi = c._axis_i
    uq, mq = c._axis_q
    gi = _gray_table(mi)[_slice_axis(s.real, ui, mi)]
    if mq == 1:
        return gi
    gq = _gray_table(mq)[_slice_axis(s.imag, uq, mq)]
    kq = int(np.log2(mq))
    return (gi << kq) | gq


def _slice_axis(x: np.ndarray, u: float, m: int) -> np.ndarray:
    idx = np.rint((x / u + (m - 1)) / 2.0).astype(np.int64)
    return np.clip(idx, 0, m - 1)


def min_distance(c: Constellation) -> float:
    p = c.points
    d = np.abs(p[:, None] - p[None, :])
    d[d == 0] = np.inf
    return float(d.min())
