"""Numeric verification of the headline inequality and its supporting counts.

Every check here reports a per-n verdict computed from scratch; nothing is
extrapolated.  The headline row compares the floor bound p_{n+4}^2/(30(n+1))
against the independently counted pi_7(p_{n+4}^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import products
from .constellation import count_sevens, seven_indices
from .errors import TableRangeError
from .products import LogValue
from .sieve import POPCOUNT, WHEEL, PrimeTable

@dataclass(frozen=True)
class VerificationRow:
    n: int
    p_n4: int
    s: int  # p_{n+4}^2
    bound: int  # s // (30(n+1))
    pi7: int
    holds: bool
    margin: int  # pi7 - bound


@dataclass(frozen=True)
class Lemma43Result:
    n: int
    r: int
    lhs: int  # r(n-1)n
    rhs: int  # p_{n+3} * p_{n+3+r-1}
    holds: bool


@dataclass(frozen=True)
class Lemma43Sweep:
    n_lo: int
    n_hi: int
    r_lo: int
    r_hi: int
    checked: int
    num_failures: int
    all_hold: bool
    first_failure: Optional[Lemma43Result]


@dataclass(frozen=True)
class BudgetCheck:
    n: int
    struck: int
    budget: int  # p_{n+5}^2 // ((n+1)(n+2))
    holds: bool


@dataclass(frozen=True)
class DensityComparison:
    n: int
    even_density: int  # n + 1
    avg_density_log: LogValue
    k_n4: int  # (p_{n+4}^2 - 1) // 30
    sift_budget: int  # p_{n+5}^2 // ((n+1)(n+2))
    dominance: bool  # n + 1 > average density


def _row(n: int, p: int, pi7: int) -> VerificationRow:
    s = p * p
    bound = s // (30 * (n + 1))
    return VerificationRow(
        n=n, p_n4=p, s=s, bound=bound, pi7=pi7, holds=bound <= pi7,
        margin=pi7 - bound,
    )


def verify_main(n: int, table: PrimeTable) -> VerificationRow:
    """One row of the headline scan; both sides computed independently."""
    if n < 1:
        raise ValueError("verify_main requires n >= 1")
    p = table.nth_prime(n + 4)
    if p * p > table.limit:
        raise TableRangeError(p * p, table.limit)
    return _row(n, p, count_sevens(p * p, table))


def max_scan_n(table: PrimeTable) -> int:
    """Largest n with p_{n+4}^2 <= table.limit."""
    return table.prime_count(math.isqrt(table.limit)) - 4


def scan_main(n_lo: int, n_hi: int, table: PrimeTable) -> list:
    """Headline rows for n_lo..n_hi off a single shared table pass."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    primes = table.first_primes(n_hi + 4)
    p_max = int(primes[n_hi + 3])
    if p_max * p_max > table.limit:
        raise TableRangeError(p_max * p_max, table.limit)
    sevens = seven_indices(table, p_max * p_max // 30)
    rows = []
    for n in range(n_lo, n_hi + 1):
        p = int(primes[n + 3])
        pi7 = int(np.searchsorted(sevens, p * p // 30))
        rows.append(_row(n, p, pi7))
    return rows


def lemma43_check(n: int, r: int, table: PrimeTable) -> Lemma43Result:
    """Exact comparison r(n-1)n < p_{n+3} p_{n+3+r-1}."""
    if n < 12:
        raise ValueError("lemma43_check requires n >= 12")
    if r < 1:
        raise ValueError("lemma43_check requires r >= 1")
    primes = table.first_primes(n + r + 2)
    lhs = r * (n - 1) * n
    rhs = int(primes[n + 2]) * int(primes[n + r + 1])
    return Lemma43Result(n=n, r=r, lhs=lhs, rhs=rhs, holds=lhs < rhs)


def lemma43_sweep(
    n_lo: int, n_hi: int, r_lo: int, r_hi: int, table: PrimeTable
) -> Lemma43Sweep:
    """Vectorized sweep of lemma43_check over a full (n, r) rectangle."""
    if n_lo < 12 or n_lo > n_hi or r_lo < 1 or r_lo > r_hi:
        raise ValueError("sweep needs 12 <= n_lo <= n_hi and 1 <= r_lo <= r_hi")
    primes = table.first_primes(n_hi + r_hi + 2)
    rs = np.arange(r_lo, r_hi + 1, dtype=np.int64)
    num_failures = 0
    first: Optional[Lemma43Result] = None
    for n in range(n_lo, n_hi + 1):
        lhs = rs * (n - 1) * n
        rhs = int(primes[n + 2]) * primes[n + rs + 1]
        bad = np.flatnonzero(lhs >= rhs)
        num_failures += len(bad)
        if len(bad) and first is None:
            r = int(rs[bad[0]])
            first = Lemma43Result(
                n=n, r=r, lhs=r * (n - 1) * n,
                rhs=int(primes[n + 2]) * int(primes[n + r + 1]), holds=False,
            )
    checked = (n_hi - n_lo + 1) * (r_hi - r_lo + 1)
    return Lemma43Sweep(
        n_lo=n_lo, n_hi=n_hi, r_lo=r_lo, r_hi=r_hi, checked=checked,
        num_failures=num_failures, all_hold=num_failures == 0, first_failure=first,
    )


def partial_sieve_bits(n_blocks: int, strike_primes) -> np.ndarray:
    """Wheel bitmap over [0, n_blocks) with bit j set iff 30x + WHEEL[j] has no
    factor among strike_primes.  Unlike the prime sieve this strikes the prime
    itself, and leaves the unit 1 marked."""
    bits = np.full(n_blocks, 0xFF, dtype=np.uint8)
    strike_more(bits, strike_primes)
    return bits


def strike_more(bits: np.ndarray, strike_primes) -> None:
    """Clear, in place, every element divisible by any of the given primes."""
    for p in strike_primes:
        p = int(p)
        inv30 = pow(30, -1, p)
        for j, i in enumerate(WHEEL):
            start = (-i * inv30) % p
            if start < len(bits):
                bits[start::p] &= 0xFF ^ (1 << j)


def _divisible_mask(n_blocks: int, q: int) -> np.ndarray:
    """Bit j set iff q divides 30x + WHEEL[j], excluding the element q itself."""
    hit = np.zeros(n_blocks, dtype=np.uint8)
    inv30 = pow(30, -1, q)
    for j, i in enumerate(WHEEL):
        start = (-i * inv30) % q
        if start < n_blocks:
            hit[start::q] |= 1 << j
    x, r = divmod(q, 30)
    if x < n_blocks:
        hit[x] &= 0xFF ^ (1 << WHEEL.index(r))
    return hit


def _struck_in_prefix(level_bits: np.ndarray, hit: np.ndarray, k: int) -> int:
    quali = level_bits[:k]
    survivors = POPCOUNT[quali] >= 7
    newly = (quali & hit[:k]) != 0
    return int(np.count_nonzero(survivors & newly))


def _level_primes(table: PrimeTable, n: int) -> tuple:
    primes = table.first_primes(n + 5)
    return int(primes[n + 2]), int(primes[n + 3]), int(primes[n + 4])


def struck_count(n: int, table: PrimeTable) -> int:
    """Blocks x < k_{n+5} that survive the level-p_{n+3} sieve with >= 7 clean
    elements and hold a composite whose least prime factor is exactly p_{n+4}."""
    if n < 1:
        raise ValueError("struck_count requires n >= 1")
    p_n3, p_n4, p_n5 = _level_primes(table, n)
    if p_n5 * p_n5 > table.limit:
        raise TableRangeError(p_n5 * p_n5, table.limit)
    k = (p_n5 * p_n5 - 1) // 30
    wheel_strikers = [p for p in table.primes_upto(p_n3).tolist() if p >= 7]
    bits = partial_sieve_bits(k, wheel_strikers)
    return _struck_in_prefix(bits, _divisible_mask(k, p_n4), k)


def induction_budget_check(n: int, table: PrimeTable) -> BudgetCheck:
    """Whether the newly struck blocks fit in the p_{n+5}^2/((n+1)(n+2)) budget."""
    _, _, p_n5 = _level_primes(table, n)
    struck = struck_count(n, table)
    budget = p_n5 * p_n5 // ((n + 1) * (n + 2))
    return BudgetCheck(n=n, struck=struck, budget=budget, holds=struck <= budget)


def induction_scan(n_lo: int, n_hi: int, table: PrimeTable) -> list:
    """Budget checks for n_lo..n_hi, advancing one shared partial sieve."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    primes = table.first_primes(n_hi + 5)
    p_top = int(primes[n_hi + 4])
    if p_top * p_top > table.limit:
        raise TableRangeError(p_top * p_top, table.limit)
    k_max = (p_top * p_top - 1) // 30
    p_lo3 = int(primes[n_lo + 2])
    bits = partial_sieve_bits(
        k_max, [p for p in table.primes_upto(p_lo3).tolist() if p >= 7]
    )
    checks = []
    for n in range(n_lo, n_hi + 1):
        p_n4, p_n5 = int(primes[n + 3]), int(primes[n + 4])
        k = (p_n5 * p_n5 - 1) // 30
        struck = _struck_in_prefix(bits, _divisible_mask(k_max, p_n4)[:k], k)
        budget = p_n5 * p_n5 // ((n + 1) * (n + 2))
        checks.append(BudgetCheck(n=n, struck=struck, budget=budget, holds=struck <= budget))
        strike_more(bits, [p_n4])  # advance to level p_{(n+1)+3}
    return checks


def density_comparison(n: int) -> DensityComparison:
    """Side-by-side of the even density n+1 and the average density product."""
    if n < 2:
        raise ValueError("density_comparison requires n >= 2")
    p_n4 = products.prime_at(n + 4)
    p_n5 = products.prime_at(n + 5)
    avg = products.density_upto(n + 3)
    return DensityComparison(
        n=n,
        even_density=n + 1,
        avg_density_log=avg,
        k_n4=(p_n4 * p_n4 - 1) // 30,
        sift_budget=p_n5 * p_n5 // ((n + 1) * (n + 2)),
        dominance=math.log(n + 1) > avg.log,
    )
