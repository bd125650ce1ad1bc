"""Seven-survivor sieve counts S7, density products over primes, and the
density-ratio scan.

S7(m, n) = 6 * 5 * (p_6 - 8) ... (p_n - 8) for m = 7 * 11 * ... * p_n is kept
as an exact integer.  The density product (7/6)(11/5) prod p_j/(p_j - 8) is
carried as a natural log with a tracked error budget, since it runs over up
to millions of primes.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import CapExceededError
from .sieve import WHEEL_ARR, shared_table

ORACLE_MAX_INDEX = 8  # m = 7*11*13*17*19 = 323323 is the largest scanned modulus
MAX_PRIME_INDEX = 50_000_000
LOG_REL_ERR_PER_FACTOR = 1e-12


@dataclass(frozen=True)
class LogValue:
    """A positive real carried as its natural log."""

    log: float
    factor_count: int

    @property
    def error_bound(self) -> float:
        return self.factor_count * LOG_REL_ERR_PER_FACTOR

    def value(self) -> float:
        return math.exp(self.log)


@dataclass(frozen=True)
class FindN0Result:
    a: int
    n_max: int
    n0: Optional[int]
    # smallest scanned n from which the recurrence factor stays < 1
    first_stable: Optional[int]


@dataclass(frozen=True)
class Eq7FactorResult:
    n: int
    p_n4: int
    holds: bool
    lhs: Fraction
    rhs: Fraction


class _PrimeLogCache:
    """Primes by index plus prefix sums of log(p_j / (p_j - 8)) for j >= 6."""

    def __init__(self):
        self._lock = threading.Lock()
        self._primes = np.empty(0, dtype=np.int64)
        self._prefix = np.empty(0, dtype=np.float64)
        self._base = math.log(7.0 / 6.0) + math.log(11.0 / 5.0)

    def _upper_bound(self, count: int) -> int:
        if count < 6:
            return 20
        return int(count * (math.log(count) + math.log(math.log(count)))) + 10

    def ensure(self, count: int) -> None:
        if count > MAX_PRIME_INDEX:
            raise CapExceededError("prime index", count, MAX_PRIME_INDEX)
        with self._lock:
            if len(self._primes) >= count:
                return
            want = max(count, 2 * len(self._primes), 1000)
            table = shared_table(self._upper_bound(want))
            primes = table.primes_upto(table.limit)
            if len(primes) < count:  # bound estimate is rigorous; belt and braces
                table = shared_table(2 * table.limit)
                primes = table.primes_upto(table.limit)
            terms = np.log(
                primes[5:].astype(np.float64) / (primes[5:] - 8.0)
            )
            self._primes = primes
            self._prefix = self._base + np.concatenate(
                [np.zeros(1), np.cumsum(terms)]
            )

    def prime(self, n: int) -> int:
        """p_n, 1-based."""
        if n < 1:
            raise ValueError("prime index must be >= 1")
        self.ensure(n)
        return int(self._primes[n - 1])

    def primes_slice(self, lo: int, hi: int) -> np.ndarray:
        """p_lo .. p_hi inclusive."""
        self.ensure(hi)
        return self._primes[lo - 1 : hi]

    def density_log(self, j: int) -> float:
        """log of (7/6)(11/5) prod_{k=6}^{j} p_k/(p_k - 8)."""
        if j < 5:
            raise ValueError("density product starts at J = 5")
        self.ensure(j)
        return float(self._prefix[j - 5])

    def density_log_array(self, j_hi: int) -> np.ndarray:
        """Prefix logs for J = 5 .. j_hi as one array."""
        self.ensure(j_hi)
        return self._prefix[: j_hi - 4]


_cache = _PrimeLogCache()


def prime_at(n: int) -> int:
    """The n-th prime, p_1 = 2."""
    return _cache.prime(n)


def s7_count(n: int) -> int:
    """S7 for the modulus 7 * 11 * ... * p_n: exactly 6*5*(p_6-8)...(p_n-8)."""
    if n < 5:
        raise ValueError("s7_count requires n >= 5")
    value = 30
    for p in _cache.primes_slice(6, n).tolist():
        value *= p - 8
    return value


def s7_modulus(n: int) -> int:
    """m = 7 * 11 * 13 * ... * p_n."""
    if n < 4:
        raise ValueError("modulus starts at p_4 = 7")
    m = 1
    for p in _cache.primes_slice(4, n).tolist():
        m *= p
    return m


def s7_construction_oracle(n: int) -> int:
    """Count x in [0, m) with one 7-divisible element and the rest coprime to m.

    Direct scan: x != 3 (mod 7) and gcd(m/7, 30x + i) = 1 for every wheel
    residue i.  Agrees with s7_count by the Chinese remainder decomposition.
    """
    if not 5 <= n <= ORACLE_MAX_INDEX:
        raise CapExceededError("s7 oracle prime index", n, ORACLE_MAX_INDEX)
    m = s7_modulus(n)
    m7 = m // 7
    count = 0
    chunk = 1 << 15
    for lo in range(0, m, chunk):
        xs = np.arange(lo, min(lo + chunk, m), dtype=np.int64)
        ok = xs % 7 != 3
        g = np.gcd(30 * xs[:, None] + WHEEL_ARR[None, :], m7)
        count += int(np.count_nonzero(ok & (g == 1).all(axis=1)))
    return count


def s7_rational_product(n: int) -> int:
    """Evaluate m(1 - 1/7)(1 - 6/11)(1 - 8/p_6)...(1 - 8/p_n) in exact rationals."""
    if n < 5:
        raise ValueError("s7_rational_product requires n >= 5")
    value = Fraction(s7_modulus(n)) * Fraction(6, 7) * Fraction(5, 11)
    for p in _cache.primes_slice(6, n).tolist():
        value *= 1 - Fraction(8, p)
    if value.denominator != 1:
        raise AssertionError(f"rational S7 product not integral at n={n}")
    return value.numerator


def density_upto(j: int) -> LogValue:
    """Average-density product through p_j, as a log; J = 5 gives 77/30."""
    return LogValue(log=_cache.density_log(j), factor_count=j - 3)


def density_total_pairwise(j: int) -> LogValue:
    """Same product summed in pairwise (parallel reduction) order."""
    if j < 5:
        raise ValueError("density product starts at J = 5")
    primes = _cache.primes_slice(6, j).astype(np.float64)
    total = math.log(7.0 / 6.0) + math.log(11.0 / 5.0)
    total += float(np.sum(np.log(primes / (primes - 8.0))))
    return LogValue(log=total, factor_count=j - 3)


def ratio(n: int) -> LogValue:
    """density_upto(n + 3) / (n + 1), in log space."""
    if n < 2:
        raise ValueError("ratio requires n >= 2")
    dens = density_upto(n + 3)
    return LogValue(log=dens.log - math.log(n + 1), factor_count=dens.factor_count + 1)


def recurrence_factor(n: int) -> float:
    """((n+1)/(n+2)) * p_{n+4}/(p_{n+4} - 8), the step ratio(n) -> ratio(n+1)."""
    p = _cache.prime(n + 4)
    return (n + 1) / (n + 2) * (p / (p - 8))


def recurrence_factor_below_one(n: int) -> bool:
    """Exact integer form of recurrence_factor(n) < 1."""
    return _cache.prime(n + 4) > 8 * (n + 2)


def find_n0(a: int, n_max: int) -> FindN0Result:
    """Smallest n <= n_max with a * density_upto(n+3) < n + 1 and the factor
    staying below 1 for every scanned n' >= n; None when no such n exists.
    """
    if a < 1:
        raise ValueError("find_n0 requires a >= 1")
    if n_max < 2:
        raise ValueError("find_n0 requires n_max >= 2")
    _cache.ensure(n_max + 4)
    ns = np.arange(2, n_max + 1, dtype=np.int64)
    dens = _cache.density_log_array(n_max + 3)[ns - 2]
    pointwise = math.log(a) + dens < np.log(ns + 1.0)
    p_n4 = _cache.primes_slice(6, n_max + 4)  # p_{n+4} for n = 2..n_max
    stable = p_n4 > 8 * (ns + 2)
    stable_suffix = np.flip(np.logical_and.accumulate(np.flip(stable)))
    first_stable = None
    hits = np.flatnonzero(stable_suffix)
    if len(hits):
        first_stable = int(ns[hits[0]])
    n0 = None
    both = np.flatnonzero(pointwise & stable_suffix)
    if len(both):
        n0 = int(ns[both[0]])
    return FindN0Result(a=a, n_max=n_max, n0=n0, first_stable=first_stable)


def check_eq7_factor(n: int) -> Eq7FactorResult:
    """Exact comparison (25n+28)/(25(n+1)) <= ((n+2)/(n+1))((p_{n+4}-8)/p_{n+4})."""
    if n < 1:
        raise ValueError("check_eq7_factor requires n >= 1")
    p = _cache.prime(n + 4)
    lhs = Fraction(25 * n + 28, 25 * (n + 1))
    rhs = Fraction((n + 2) * (p - 8), (n + 1) * p)
    return Eq7FactorResult(
        n=n, p_n4=p, holds=(25 * n + 28) * p <= 25 * (n + 2) * (p - 8),
        lhs=lhs, rhs=rhs,
    )


def check_prime_growth(n: int) -> bool:
    """Whether p_{n+4} >= 10(n+1)."""
    if n < 1:
        raise ValueError("check_prime_growth requires n >= 1")
    return _cache.prime(n + 4) >= 10 * (n + 1)


def check_prime_growth_range(n_lo: int, n_hi: int) -> bool:
    """Vectorized all-hold of check_prime_growth over [n_lo, n_hi]."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    return bool(np.all(_cache.primes_slice(n_lo + 4, n_hi + 4) >= 10 * (ns + 1)))


def divergence_partial_sum(s: int, k: int) -> float:
    """Partial sum of 3 / (25(n+1)) for n = s..k."""
    if s > k:
        raise ValueError("need s <= k")
    return math.fsum(3.0 / (25.0 * (n + 1.0)) for n in range(s, k + 1))
