"""The counting function phi3(30m) and trial-division factorization.

phi3(30m) counts the x in [0, m) whose whole tuple {30x + i : i in S} is
coprime to m.  It is multiplicative with local factors q^k for q in
{2, 3, 5}, zero for q = 7, 11^k - 6*11^(k-1) for q = 11 and
p^k - 8*p^(k-1) for p >= 13.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CapExceededError
from .sieve import WHEEL_ARR, shared_table

# (prime, exponent) pairs, primes ascending, exponents >= 1
Factorization = list

BRUTEFORCE_CAP = 10**6


def factorize(m: int) -> Factorization:
    """Canonical prime factorization of m >= 1 by trial division; 1 -> []."""
    if m < 1:
        raise ValueError("factorize requires m >= 1")
    pairs = []
    rest = m
    for p in shared_table(max(math.isqrt(m), 100)).primes_upto(math.isqrt(m)).tolist():
        if p * p > rest:
            break
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            pairs.append((p, k))
    if rest > 1:
        pairs.append((rest, 1))  # no divisor <= sqrt(m): rest is prime
    return pairs


def phi3_bruteforce(m: int, cap: int = BRUTEFORCE_CAP) -> int:
    """Direct gcd scan of all x in [0, m); the oracle for phi3_formula."""
    if m < 1:
        raise ValueError("phi3_bruteforce requires m >= 1")
    if m > cap:
        raise CapExceededError("phi3 brute-force modulus", m, cap)
    count = 0
    chunk = 1 << 16
    for lo in range(0, m, chunk):
        xs = np.arange(lo, min(lo + chunk, m), dtype=np.int64)
        g = np.gcd(30 * xs[:, None] + WHEEL_ARR[None, :], m)
        count += int(np.count_nonzero((g == 1).all(axis=1)))
    return count


def phi3_formula(m: int) -> int:
    """Multiplicative evaluation from the factorization; any factor 7 gives 0."""
    if m < 1:
        raise ValueError("phi3_formula requires m >= 1")
    value = 1
    for p, k in factorize(m):
        if p in (2, 3, 5):
            value *= p**k
        elif p == 7:
            return 0
        elif p == 11:
            value *= 11**k - 6 * 11 ** (k - 1)
        else:
            value *= p**k - 8 * p ** (k - 1)
    return value
