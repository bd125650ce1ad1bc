"""Segmented sieve of Eratosthenes on the mod-30 wheel.

Integers coprime to 30 fall in the eight residue classes
S = {1, 7, 11, 13, 17, 19, 23, 29}, so each block of 30 consecutive
integers [30x, 30x+29] is stored as one byte: bit j of block x is set
iff 30x + WHEEL[j] is prime.  2, 3 and 5 never occupy a wheel residue
and live in a constant side list.
"""

from __future__ import annotations

import hashlib
import math
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import CapExceededError, TableRangeError

WHEEL = (1, 7, 11, 13, 17, 19, 23, 29)
WHEEL_ARR = np.array(WHEEL, dtype=np.int64)
SMALL_PRIMES = (2, 3, 5)

DEFAULT_CAP = 1 << 34
DEFAULT_SEGMENT_BLOCKS = 1 << 20  # 1 MiB of bitmap ~ 31.5M integers per segment

CACHE_MAGIC = b"WHL30SV1"

POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

# mask of wheel bits j with WHEEL[j] <= r, for r in 0..29
_UPTO_MASK = np.array(
    [sum(1 << j for j in range(8) if WHEEL[j] <= r) for r in range(30)],
    dtype=np.uint8,
)
# mask of wheel bits j with WHEEL[j] >= r
_FROM_MASK = np.array(
    [sum(1 << j for j in range(8) if WHEEL[j] >= r) for r in range(30)],
    dtype=np.uint8,
)


@dataclass
class Segment:
    """A contiguous half-open block range [block_lo, block_hi) of the bitmap."""

    block_lo: int
    block_hi: int
    bits: np.ndarray


def _odd_sieve(limit: int) -> np.ndarray:
    """All primes <= limit by a plain byte sieve (used for base primes only)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _strike_params(base_primes: np.ndarray):
    """Per sieving prime p >= 7: (p, x0s, xmins) with 30*x0s[j] + WHEEL[j] = 0
    (mod p), and xmins[j] the first block whose element reaches p*p, so p
    itself is never struck."""
    params = []
    for p in base_primes.tolist():
        if p < 7:
            continue
        inv30 = pow(30, -1, p)
        x0s = [(-i * inv30) % p for i in WHEEL]
        xmins = [(p * p - i + 29) // 30 for i in WHEEL]
        params.append((p, x0s, xmins))
    return params


def _sieve_segment(block_lo: int, block_hi: int, params) -> np.ndarray:
    """Sieve the wheel bitmap for blocks [block_lo, block_hi)."""
    n = block_hi - block_lo
    seg = np.full(n, 0xFF, dtype=np.uint8)
    for p, x0s, xmins in params:
        if p * p >= 30 * block_hi:
            break  # params are ascending; nothing left to strike here
        for j in range(8):
            t = xmins[j]
            if t < block_lo:
                t = block_lo
            start = t + (x0s[j] - t) % p
            if start < block_hi:
                seg[start - block_lo :: p] &= 0xFF ^ (1 << j)
    if block_lo == 0:
        seg[0] &= 0xFE  # 30*0 + 1 = 1 is not prime
    return seg


def _segment_ranges(n_blocks: int, segment_blocks: int):
    return [
        (lo, min(lo + segment_blocks, n_blocks))
        for lo in range(0, n_blocks, segment_blocks)
    ]


@dataclass(eq=False)
class PrimeTable:
    """Immutable wheel-30 primality table covering [lo, limit].

    Safe to share across threads once built; every query is pure.
    """

    limit: int
    wheel_bits: np.ndarray
    lo: int = 0
    small_primes: tuple = SMALL_PRIMES
    _primes_cache: Optional[np.ndarray] = field(default=None, init=False, repr=False)
    _primes_cache_upto: int = field(default=-1, init=False, repr=False)
    _cache_lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False
    )

    @property
    def n_blocks(self) -> int:
        return len(self.wheel_bits)

    def same_bits(self, other: "PrimeTable") -> bool:
        return (
            self.limit == other.limit
            and self.lo == other.lo
            and self.wheel_bits.tobytes() == other.wheel_bits.tobytes()
        )

    def block_mask(self, x: int) -> int:
        """The 8-bit primality mask of block x (bit j for 30x + WHEEL[j])."""
        if not 0 <= x < self.n_blocks:
            raise TableRangeError(30 * x + 29, self.limit)
        return int(self.wheel_bits[x])

    def is_prime(self, a: int) -> bool:
        """Bit lookup for a <= limit; for limit < a <= limit**2, trial division
        by the sieved primes up to sqrt(a)."""
        if a < 0:
            raise ValueError("is_prime requires a >= 0")
        if a < 2 or a < self.lo:
            return False
        if a in (2, 3, 5):
            return a <= self.limit
        if a % 2 == 0 or a % 3 == 0 or a % 5 == 0:
            return False
        if a <= self.limit:
            x, r = divmod(a, 30)
            j = WHEEL.index(r)
            return bool(self.wheel_bits[x] >> j & 1)
        root = math.isqrt(a)
        if root > self.limit:
            raise TableRangeError(root, self.limit)
        primes = self._ensure_prime_cache(root)
        cut = int(np.searchsorted(primes, root, side="right"))
        return not bool(np.any(a % primes[:cut] == 0))

    def primes_upto(self, x: int) -> np.ndarray:
        """Ascending int64 array of all marked primes <= x."""
        if x > self.limit:
            raise TableRangeError(x, self.limit)
        if x < 2:
            return np.empty(0, dtype=np.int64)
        n_blocks = x // 30 + 1
        flat = np.unpackbits(self.wheel_bits[:n_blocks], bitorder="little")
        idx = np.flatnonzero(flat)
        vals = 30 * (idx >> 3) + WHEEL_ARR[idx & 7]
        vals = vals[vals <= x]
        small = [p for p in self.small_primes if self.lo <= p <= x]
        if small:
            vals = np.concatenate([np.array(small, dtype=np.int64), vals])
        return vals

    def prime_count(self, x: int) -> int:
        """pi(x): number of marked primes <= x."""
        if x < 0:
            raise ValueError("prime_count requires x >= 0")
        if x > self.limit:
            raise TableRangeError(x, self.limit)
        q, r = divmod(x, 30)
        total = sum(1 for p in self.small_primes if self.lo <= p <= x)
        if q > 0:
            total += int(np.add.reduce(POPCOUNT[self.wheel_bits[:q]], dtype=np.int64))
        if q < self.n_blocks:
            total += int(POPCOUNT[self.wheel_bits[q] & _UPTO_MASK[r]])
        return total

    def _ensure_prime_cache(self, upto: int) -> np.ndarray:
        upto = min(upto, self.limit)
        with self._cache_lock:
            if self._primes_cache is None or self._primes_cache_upto < upto:
                # grow geometrically so repeated slightly-larger asks stay cheap
                target = min(self.limit, max(upto, 2 * max(self._primes_cache_upto, 0)))
                self._primes_cache = self.primes_upto(target)
                self._primes_cache_upto = target
            return self._primes_cache

    def first_primes(self, count: int) -> np.ndarray:
        """The first `count` marked primes, ascending."""
        if count < 0:
            raise ValueError("count must be >= 0")
        if self.lo > 2:
            raise ValueError("index-based access requires a table built from 0")
        # Rosser-style upper estimate, then extract once and slice.
        if count < 6:
            bound = 15
        else:
            bound = int(count * (math.log(count) + math.log(math.log(count)))) + 10
        primes = self._ensure_prime_cache(max(bound, 100))
        if count > len(primes):
            primes = self._ensure_prime_cache(self.limit)
            if count > len(primes):
                raise TableRangeError(bound, self.limit)
        return primes[:count]

    def nth_prime(self, n: int) -> int:
        """p_n with p_1 = 2, indexed over the ascending marked primes."""
        if n < 1:
            raise ValueError("nth_prime requires n >= 1")
        return int(self.first_primes(n)[n - 1])


def sieve_range(
    lo: int,
    hi: int,
    *,
    segment_blocks: int = DEFAULT_SEGMENT_BLOCKS,
    threads: int = 1,
    cap: int = DEFAULT_CAP,
) -> PrimeTable:
    """Build the wheel table marking exactly the primes in [lo, hi]."""
    if lo < 0 or lo > hi:
        raise ValueError(f"need 0 <= lo <= hi, got lo={lo} hi={hi}")
    if hi > cap:
        raise CapExceededError("sieve limit", hi, cap)
    if segment_blocks < 1:
        raise ValueError("segment_blocks must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")

    n_blocks = hi // 30 + 1
    params = _strike_params(_odd_sieve(math.isqrt(hi)))
    ranges = _segment_ranges(n_blocks, segment_blocks)

    if threads == 1 or len(ranges) == 1:
        parts = [_sieve_segment(a, b, params) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(_sieve_segment, *zip(*ranges), [params] * len(ranges))
            )
    bits = parts[0] if len(parts) == 1 else np.concatenate(parts)

    bits[-1] &= _UPTO_MASK[hi % 30]  # drop wheel elements above hi
    if lo > 0:
        first = lo // 30
        bits[:first] = 0
        bits[first] &= _FROM_MASK[min(lo - 30 * first, 29)]
    return PrimeTable(limit=hi, wheel_bits=bits, lo=lo)


def segments_of(table: PrimeTable, segment_blocks: int) -> Iterator[Segment]:
    """View the table as a partition into non-overlapping segments."""
    for a, b in _segment_ranges(table.n_blocks, segment_blocks):
        yield Segment(a, b, table.wheel_bits[a:b])


def primes_stream(limit: int, table: Optional[PrimeTable] = None) -> Iterator[int]:
    """Yield the primes <= limit in ascending order."""
    if limit < 2:
        raise ValueError("primes_stream requires limit >= 2")
    if table is None:
        table = shared_table(limit)
    elif limit > table.limit:
        raise TableRangeError(limit, table.limit)
    return _stream(limit, table)


def _stream(limit: int, table: PrimeTable) -> Iterator[int]:
    for p in table.small_primes:
        if table.lo <= p <= limit:
            yield p
    chunk = 1 << 16
    for a in range(0, limit // 30 + 1, chunk):
        b = min(a + chunk, limit // 30 + 1)
        flat = np.unpackbits(table.wheel_bits[a:b], bitorder="little")
        idx = np.flatnonzero(flat)
        vals = 30 * (idx >> 3) + 30 * a + WHEEL_ARR[idx & 7]
        for v in vals.tolist():
            if v > limit:
                return
            yield v


def _checksum(payload: bytes) -> bytes:
    return hashlib.blake2b(payload, digest_size=8).digest()


def save_cache(table: PrimeTable, path: str) -> None:
    """Write the binary cache: magic, limit (u64 LE), bitmap, 8-byte checksum."""
    if table.lo != 0:
        raise ValueError("only tables built from 0 can be cached")
    head = CACHE_MAGIC + table.limit.to_bytes(8, "little")
    body = table.wheel_bits.tobytes()
    with open(path, "wb") as fh:
        fh.write(head)
        fh.write(body)
        fh.write(_checksum(head + body))


def load_cache(path: str, cap: int = DEFAULT_CAP) -> PrimeTable:
    """Read and validate a WHL30SV1 cache file."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 24 or raw[:8] != CACHE_MAGIC:
        raise ValueError(f"not a {CACHE_MAGIC.decode()} cache file: {path}")
    limit = int.from_bytes(raw[8:16], "little")
    if limit > cap:
        raise CapExceededError("cached sieve limit", limit, cap)
    n_blocks = limit // 30 + 1
    if len(raw) != 16 + n_blocks + 8:
        raise ValueError(f"cache file truncated or oversized: {path}")
    body = raw[16 : 16 + n_blocks]
    if _checksum(raw[: 16 + n_blocks]) != raw[-8:]:
        raise ValueError(f"cache checksum mismatch: {path}")
    return PrimeTable(limit=limit, wheel_bits=np.frombuffer(body, dtype=np.uint8).copy())


_shared_lock = threading.Lock()
_shared_table: Optional[PrimeTable] = None


def shared_table(min_limit: int, *, threads: int = 1, cap: int = DEFAULT_CAP) -> PrimeTable:
    """Process-wide table grown on demand; geometric growth amortizes rebuilds."""
    global _shared_table
    if min_limit > cap:
        raise CapExceededError("sieve limit", min_limit, cap)
    with _shared_lock:
        if _shared_table is not None and _shared_table.limit >= min_limit:
            return _shared_table
        target = max(min_limit, 1_000_000)
        if _shared_table is not None:
            target = max(target, 2 * _shared_table.limit)
        _shared_table = sieve_range(0, min(target, cap), threads=threads, cap=cap)
        return _shared_table


def set_shared_table(table: PrimeTable) -> None:
    """Install a prebuilt table (e.g. loaded from cache) as the shared one."""
    global _shared_table
    with _shared_lock:
        if _shared_table is None or table.limit > _shared_table.limit:
            _shared_table = table
