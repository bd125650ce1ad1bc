"""Tuples T_x = {30x + i : i in S}: primality patterns, seven-prime counts, gap pairs.

A block x is a "seven-prime" block when exactly seven of the eight tuple
elements are prime.  For x >= 1 at least one element is divisible by 7
(two when x = 3 mod 7), so seven is the maximum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TableRangeError
from .sieve import POPCOUNT, WHEEL, PrimeTable

# realized pairwise differences of S; no other even gap can occur in one tuple
TUPLE_GAPS = frozenset({2, 4, 6, 8, 10, 12, 16, 18, 22, 28})


@dataclass(frozen=True)
class TupleReport:
    x: int
    elements: tuple
    prime_mask: tuple
    prime_count: int


@dataclass(frozen=True)
class GapSet:
    """Even gaps realized by prime pairs within one tuple, with witnesses."""

    x: int
    gaps: frozenset
    witnesses: tuple  # (p, p') pairs, p < p', both prime, both in T_x


def tuple_report(x: int, table: PrimeTable) -> TupleReport:
    """Read block x's primality mask straight from the wheel bits."""
    if x < 0:
        raise ValueError("block index must be >= 0")
    if 30 * x + 29 > table.limit:
        raise TableRangeError(30 * x + 29, table.limit)
    mask = table.block_mask(x)
    flags = tuple(bool(mask >> j & 1) for j in range(8))
    return TupleReport(
        x=x,
        elements=tuple(30 * x + i for i in WHEEL),
        prime_mask=flags,
        prime_count=sum(flags),
    )


def _seven_flags(table: PrimeTable, n_blocks: int) -> np.ndarray:
    if 30 * n_blocks - 1 > table.limit:
        raise TableRangeError(30 * n_blocks - 1, table.limit)
    return POPCOUNT[table.wheel_bits[:n_blocks]] == 7


def count_sevens(s: int, table: PrimeTable) -> int:
    """pi_7(s): blocks x < s // 30 whose tuple holds seven primes."""
    if s < 30:
        raise ValueError("count_sevens is defined for s >= 30")
    return int(np.count_nonzero(_seven_flags(table, s // 30)))


def enumerate_sevens(x_max: int, table: PrimeTable) -> list:
    """All x <= x_max with seven primes in T_x, ascending."""
    if x_max < 0:
        raise ValueError("x_max must be >= 0")
    return np.flatnonzero(_seven_flags(table, x_max + 1)).tolist()


def seven_indices(table: PrimeTable, x_limit: int) -> np.ndarray:
    """Sorted array of all seven-prime block indices below x_limit."""
    return np.flatnonzero(_seven_flags(table, x_limit))


def gap_pairs(x: int, table: PrimeTable) -> GapSet:
    """Every even gap realized by a pair of primes inside T_x."""
    report = tuple_report(x, table)
    primes = [e for e, ok in zip(report.elements, report.prime_mask) if ok]
    pairs = tuple(
        (p, q) for k, p in enumerate(primes) for q in primes[k + 1 :]
    )
    return GapSet(x=x, gaps=frozenset(q - p for p, q in pairs), witnesses=pairs)
