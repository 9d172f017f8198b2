"""Margin-adaptive bit and power loading for multicarrier transmitters.

Bit assignment maximizes the minimum per-carrier margin at the target rate
under the SNR-gap approximation; power scales then equalize per-carrier
symbol error probability and are renormalized so the mean square over the
loaded carriers is one.
"""

import csv
import heapq
import io
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConfigurationError


@dataclass(frozen=True)
class LoadingEntry:
    index: int
    bits: int
    power_scale: float


@dataclass(frozen=True)
class LoadingTable:
    entries: tuple
    total_bits_per_symbol: int

    def __post_init__(self):
        total = sum(e.bits for e in self.entries)
        if total != self.total_bits_per_symbol:
            raise ConfigurationError("entry bits do not sum to total_bits_per_symbol")
        for e in self.entries:
            if not 0 <= e.bits <= 8:
                raise ConfigurationError(f"bits out of range on carrier {e.index}")
            if e.power_scale <= 0:
                raise ConfigurationError(f"power_scale must be > 0 on carrier {e.index}")
        active = [e.power_scale**2 for e in self.entries if e.bits > 0]
        if active and abs(np.mean(active) - 1.0) > 1e-9:
            raise ConfigurationError("mean power_scale^2 over loaded carriers must be 1")

    @property
    def bits_array(self) -> np.ndarray:
        return np.array([e.bits for e in self.entries], dtype=np.int64)

    @property
    def power_array(self) -> np.ndarray:
        return np.array([e.power_scale for e in self.entries])

    @property
    def indices(self) -> np.ndarray:
        return np.array([e.index for e in self.entries], dtype=np.int64)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["carrier", "bits", "power_scale"])
        for e in self.entries:
            w.writerow([e.index, e.bits, f"{e.power_scale:.12g}"])
        return buf.getvalue()


def table_from_csv(text: str) -> LoadingTable:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["carrier", "bits", "power_scale"]:
        raise ConfigurationError("loading CSV must start with header carrier,bits,power_scale")
    entries = tuple(
        LoadingEntry(int(r[0]), int(r[1]), float(r[2])) for r in rows[1:] if r
    )
    return LoadingTable(entries, sum(e.bits for e in entries))


def uniform_table(indices, bits: int, total=None) -> LoadingTable:
    indices = list(indices)
    entries = tuple(LoadingEntry(int(i), bits, 1.0) for i in indices)
    return LoadingTable(entries, bits * len(indices))


def make_table(indices, bits, snr_db=None, gap_db=9.8) -> LoadingTable:
    """Table from explicit per-carrier bit counts, with equalizing power."""
    bits = np.asarray(bits, dtype=np.int64)
    power = _equalizing_power(bits, snr_db, gap_db)
    entries = tuple(
        LoadingEntry(int(i), int(b), float(p))
        for i, b, p in zip(indices, bits, power)
    )
    return LoadingTable(entries, int(bits.sum()))


def chow_load(
    snr_db,
    target_bits: int,
    gap_db: float = 9.8,
    indices=None,
    allowed_bits=None,
) -> LoadingTable:
    """SNR-driven integer bit assignment plus error-probability-equalizing power.

    Bits are granted one allowed step at a time to the carrier whose
    post-grant margin snr / (gap * (2^b - 1)) is largest, which lands on the
    exact max-min-margin optimum for contiguous allowed sets. `allowed_bits`
    restricts the per-carrier alphabet (e.g. {0, 2, 3, 4, 5, 6} for formats
    without BPSK); 0 must be a member.
    """
    snr_db = np.asarray(snr_db, dtype=np.float64)
    n = snr_db.size
    if indices is None:
        indices = np.arange(n)
    indices = np.asarray(indices)
    if indices.size != n:
        raise ConfigurationError("indices length must match snr vector")
    if allowed_bits is None:
        allowed = list(range(0, 9))
    else:
        allowed = sorted(set(int(b) for b in allowed_bits))
        if allowed[0] != 0 or allowed[-1] > 8:
            raise ConfigurationError("allowed_bits must include 0 and stay <= 8")
    max_total = allowed[-1] * n
    if target_bits > max_total:
        raise CapacityError(
            f"target {target_bits} bits exceeds achievable {max_total}",
            achievable_bits=max_total,
        )
    if target_bits < 0:
        raise ConfigurationError("target_bits must be >= 0")

    g = 10.0 ** (snr_db / 10.0)
    gap = 10.0 ** (gap_db / 10.0)
    steps = {allowed[i]: allowed[i + 1] for i in range(len(allowed) - 1)}

    def margin(i, b):
        return g[i] / (gap * (2.0**b - 1.0))

    bits = np.zeros(n, dtype=np.int64)
    total = 0
    # heap of (-margin_after_raise, carrier); lazily refreshed
    heap = [(-margin(i, steps[0]), int(i)) for i in range(n)] if 0 in steps else []
    heapq.heapify(heap)
    stalled = []
    while total < target_bits:
        if not heap:
            if stalled:
                # granularity deadlock (step larger than the remaining bits):
                # force the best stalled raise, then trim the overshoot from
                # the lowest-margin carriers
                heapq.heapify(stalled)
                negm, i = heapq.heappop(stalled)
                bits[i] = steps[int(bits[i])]
                _trim_to_target(bits, int(bits.sum()) - target_bits, margin, steps, allowed)
                total = target_bits
                stalled = []
                continue
            raise CapacityError(
                f"cannot reach {target_bits} bits with allowed set {allowed}",
                achievable_bits=total,
            )
        negm, i = heapq.heappop(heap)
        nxt = steps.get(int(bits[i]))
        if nxt is None:
            continue
        cur_m = -margin(i, nxt)
        if cur_m != negm:
            heapq.heappush(heap, (cur_m, i))
            continue
        step = nxt - bits[i]
        if step > target_bits - total:
            stalled.append((negm, i))
            continue
        bits[i] = nxt
        total += step
        if steps.get(nxt) is not None:
            heapq.heappush(heap, (-margin(i, steps[nxt]), i))

    power = _equalizing_power(bits, snr_db, gap_db)
    entries = tuple(
        LoadingEntry(int(indices[i]), int(bits[i]), float(power[i])) for i in range(n)
    )
    return LoadingTable(entries, int(target_bits))


def _trim_to_target(bits, excess, margin, steps, allowed):
    """Remove `excess` bits by lowering the carriers with the lowest margins."""
    down = {allowed[i + 1]: allowed[i] for i in range(len(allowed) - 1)}
    while excess > 0:
        best = None
        for i in range(bits.size):
            b = int(bits[i])
            if b == 0:
                continue
            lower = down[b]
            step = b - lower
            if step > excess:
                continue
            m = margin(i, b)
            if best is None or m < best[0]:
                best = (m, i, lower, step)
        if best is None:
            raise CapacityError("loading repair failed to hit the exact target")
        _, i, lower, step = best
        bits[i] = lower
        excess -= step


def _equalizing_power(bits, snr_db, gap_db):
    """power_scale^2 proportional to required SNR / actual SNR, mean 1 on loaded carriers."""
    bits = np.asarray(bits)
    power = np.ones(bits.size)
    active = bits > 0
    if not np.any(active):
        return power
    if snr_db is None:
        return power
    g = 10.0 ** (np.asarray(snr_db, dtype=np.float64) / 10.0)
    gap = 10.0 ** (gap_db / 10.0)
    req = gap * (2.0 ** bits[active].astype(np.float64) - 1.0) / g[active]
    p2 = req / np.mean(req)
    power[active] = np.sqrt(p2)
    return power
