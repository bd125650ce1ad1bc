"""Order-preserving merges of two ascending runs (1..m) and (1..n).

The number of distinct merged words is C(m+n, m) - C(m+n, m+1); the m = n
case is the Catalan number.  An exhaustive interleaving enumerator serves
as the independent oracle at small sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import CapExceededError

ENUMERATE_CAP = 14  # C(14, 7) = 3432 interleavings, trivially exhaustive


@dataclass(frozen=True)
class MergeCountResult:
    m: int
    n: int
    count: int
    spacing: Fraction  # (m+1)/(m-n+1), mean gap between surviving words


def _check_pair(m: int, n: int) -> None:
    if not m >= n >= 1:
        raise ValueError(f"need m >= n >= 1, got m={m} n={n}")


def merge_count(m: int, n: int) -> MergeCountResult:
    """Distinct merged words, computed three algebraically equal ways."""
    _check_pair(m, n)
    total = comb(m + n, m)
    by_diagonal = total - sum(comb(m + n - j, m) for j in range(1, n + 1))
    by_binomial = total - comb(m + n, m + 1)
    by_ratio = Fraction(total) * (1 - Fraction(n, m + 1))
    if not (by_diagonal == by_binomial == by_ratio):
        raise AssertionError(
            f"merge count forms disagree for m={m} n={n}: "
            f"{by_diagonal}, {by_binomial}, {by_ratio}"
        )
    return MergeCountResult(
        m=m, n=n, count=by_binomial, spacing=Fraction(m + 1, m - n + 1)
    )


def merge_enumerate_oracle(m: int, n: int) -> int:
    """Count distinct words over all C(m+n, m) interleavings (m + n <= 14)."""
    _check_pair(m, n)
    if m + n > ENUMERATE_CAP:
        raise CapExceededError("merge enumeration size m+n", m + n, ENUMERATE_CAP)
    size = m + n
    words = set()
    for positions in itertools.combinations(range(size), m):
        word = [0] * size
        for value, pos in enumerate(positions, start=1):
            word[pos] = value
        value = 1
        for pos in range(size):
            if word[pos] == 0:
                word[pos] = value
                value += 1
        words.add(tuple(word))
    return len(words)


def diagonal_identity_check(m: int, n: int) -> bool:
    """C(m+n, m+1) equals the diagonal sum of C(m+n-j, m) for j = 1..n."""
    _check_pair(m, n)
    return comb(m + n, m + 1) == sum(comb(m + n - j, m) for j in range(1, n + 1))


def catalan(n: int) -> int:
    """C(2n, n) / (n + 1), exactly."""
    if n < 1:
        raise ValueError("catalan requires n >= 1")
    q, r = divmod(comb(2 * n, n), n + 1)
    if r:
        raise AssertionError(f"C(2n, n) not divisible by n + 1 at n={n}")
    return q
