import math
from fractions import Fraction

import pytest

from oracles import naive_struck_count, trial_primes_upto
from wheel7.constellation import count_sevens
from wheel7.errors import TableRangeError
from wheel7.verify import (
    density_comparison,
    induction_budget_check,
    induction_scan,
    lemma43_check,
    lemma43_sweep,
    max_scan_n,
    partial_sieve_bits,
    scan_main,
    strike_more,
    struck_count,
    verify_main,
)

PRIMES = trial_primes_upto(50_000)


def test_row_n1(table_1m):
    row = verify_main(1, table_1m)
    assert (row.p_n4, row.s, row.bound, row.pi7) == (11, 121, 2, 3)
    assert row.holds and row.margin == 1


def test_row_n2(table_1m):
    row = verify_main(2, table_1m)
    assert (row.p_n4, row.bound, row.pi7) == (13, 1, 3)
    assert row.holds


def test_row_n5(table_1m):
    # p_9 = 23; the bound and count computed from scratch
    row = verify_main(5, table_1m)
    assert row.p_n4 == 23
    assert row.bound == 529 // 180 == 2
    assert row.pi7 == count_sevens(529, table_1m) == 3
    assert row.holds


def test_first_desk_scale_failure(table_1m):
    # the floor bound overtakes pi_7 at n = 6 already: 841//210 = 4 > 3
    row = verify_main(6, table_1m)
    assert (row.p_n4, row.bound, row.pi7, row.holds) == (29, 4, 3, False)


def test_scan_agrees_with_single_rows(table_1m):
    rows = scan_main(1, 40, table_1m)
    assert len(rows) == 40
    for row in rows:
        single = verify_main(row.n, table_1m)
        assert single == row
        # bound recomputable from the row alone with pure integer ops
        assert row.bound == row.p_n4 * row.p_n4 // (30 * (row.n + 1))
        assert row.s == row.p_n4 * row.p_n4
        assert row.holds == (row.bound <= row.pi7)
        assert row.margin == row.pi7 - row.bound


def test_scan_pi7_equals_constellation_count(table_1m):
    # two code paths, one truth: searchsorted scan vs popcount count
    for row in scan_main(1, 60, table_1m):
        assert row.pi7 == count_sevens(row.s, table_1m)


def test_prime_square_mod_30():
    for p in PRIMES:
        if p < 7:
            continue
        assert p * p % 30 in (1, 19)
        assert (p * p - 1) // 30 == p * p // 30


def test_max_scan_n(table_1m):
    n = max_scan_n(table_1m)
    p = PRIMES[n + 3]
    nxt = PRIMES[n + 4]
    assert p * p <= table_1m.limit < nxt * nxt


def test_lemma43_examples(table_1m):
    r = lemma43_check(12, 1, table_1m)
    assert (r.lhs, r.rhs, r.holds) == (132, 47 * 47, True)
    r = lemma43_check(12, 5, table_1m)
    assert (r.lhs, r.rhs, r.holds) == (660, 47 * 67, True)


def test_lemma43_domain(table_1m):
    with pytest.raises(ValueError):
        lemma43_check(12, 0, table_1m)
    with pytest.raises(ValueError):
        lemma43_check(11, 1, table_1m)


def test_lemma43_matches_exact_arithmetic(table_1m):
    for n in (12, 20, 36, 100):
        for r in (1, 2, 141, 500):
            res = lemma43_check(n, r, table_1m)
            assert res.lhs == r * (n - 1) * n
            assert res.rhs == PRIMES[n + 2] * PRIMES[n + r + 1]
            assert res.holds == (res.lhs < res.rhs)


def test_lemma43_sweep_matches_per_pair_loop(table_1m):
    sweep = lemma43_sweep(12, 45, 1, 160, table_1m)
    brute = [
        (n, r)
        for n in range(12, 46)
        for r in range(1, 161)
        if not lemma43_check(n, r, table_1m).holds
    ]
    assert sweep.checked == 34 * 160
    assert sweep.num_failures == len(brute)
    assert sweep.all_hold == (not brute)
    if brute:
        first = sweep.first_failure
        assert (first.n, first.r) == brute[0]


def test_lemma43_first_counterexample(table_1m):
    # the inequality fails inside the scanned rectangle; first at (36, 141)
    sweep = lemma43_sweep(12, 50, 1, 200, table_1m)
    assert not sweep.all_hold
    assert (sweep.first_failure.n, sweep.first_failure.r) == (36, 141)
    assert sweep.first_failure.lhs == 141 * 35 * 36 == 177660
    assert sweep.first_failure.rhs == 167 * 1063 == 177521


def test_struck_count_against_naive_oracle(table_1m):
    for n in range(1, 7):
        assert struck_count(n, table_1m) == naive_struck_count(n, PRIMES), n


def test_struck_count_known_values(table_1m):
    assert struck_count(1, table_1m) == 1  # x = 4: 121 = 11^2 and 143 = 11*13
    assert struck_count(2, table_1m) == naive_struck_count(2, PRIMES)


def test_budget_check(table_1m):
    check = induction_budget_check(1, table_1m)
    assert check.budget == 169 // 6 == 28
    assert check.struck == 1
    assert check.holds


def test_induction_scan_matches_single_checks(table_1m):
    scan = induction_scan(1, 12, table_1m)
    assert [c.n for c in scan] == list(range(1, 13))
    for check in scan:
        assert check == induction_budget_check(check.n, table_1m)


def test_strike_advances_sieve_level(table_1m):
    # striking p_{n+4} on the level-(n+3) bitmap gives the level-(n+4) bitmap
    for n in (1, 3, 8):
        p_n3, p_n4, p_n5 = PRIMES[n + 2], PRIMES[n + 3], PRIMES[n + 4]
        k = (p_n5 * p_n5 - 1) // 30
        strikers = [p for p in PRIMES if 7 <= p <= p_n3]
        level_lo = partial_sieve_bits(k, strikers)
        strike_more(level_lo, [p_n4])
        level_hi = partial_sieve_bits(k, strikers + [p_n4])
        assert level_lo.tobytes() == level_hi.tobytes()


def test_survivors_dropped_between_levels_were_struck(table_1m):
    # a block leaves the >= 7-clean set at level p_{n+4} only if one of its
    # clean elements was struck: either a composite with least factor p_{n+4}
    # (counted by struck_count) or the prime p_{n+4} itself (one block, not
    # counted since it is not composite)
    from wheel7.sieve import POPCOUNT

    for n in (1, 2, 5, 9):
        p_n3, p_n4, p_n5 = PRIMES[n + 2], PRIMES[n + 3], PRIMES[n + 4]
        k = (p_n5 * p_n5 - 1) // 30
        strikers = [p for p in PRIMES if 7 <= p <= p_n3]
        level_lo = partial_sieve_bits(k, strikers)
        level_hi = partial_sieve_bits(k, strikers + [p_n4])
        dropped = ((POPCOUNT[level_lo] >= 7) & (POPCOUNT[level_hi] < 7))
        own_block_dropped = int(dropped[p_n4 // 30]) if p_n4 // 30 < k else 0
        assert int(dropped.sum()) - own_block_dropped <= struck_count(n, table_1m)


def test_partial_sieve_leaves_unit_marked():
    bits = partial_sieve_bits(4, [7, 11, 13])
    assert bits[0] & 1  # element 1 has no prime factor at all
    assert not (bits[0] >> 1) & 1  # element 7 struck by itself


def test_density_comparison_small():
    dc = density_comparison(2)
    assert dc.even_density == 3
    assert math.isclose(dc.avg_density_log.value(), 77 / 30, rel_tol=1e-12)
    assert dc.dominance  # 3 > 77/30
    dc = density_comparison(3)
    assert dc.even_density == 4
    assert math.isclose(dc.avg_density_log.value(), float(Fraction(1001, 150)), rel_tol=1e-12)
    assert not dc.dominance  # 4 < 1001/150


def test_density_comparison_fields():
    for n in (2, 5, 20, 1000):
        dc = density_comparison(n)
        p4, p5 = PRIMES[n + 3], PRIMES[n + 4]
        assert dc.k_n4 == (p4 * p4 - 1) // 30 == p4 * p4 // 30
        assert dc.sift_budget == p5 * p5 // ((n + 1) * (n + 2))
        assert dc.dominance == (math.log(n + 1) > dc.avg_density_log.log)
        assert dc.k_n4 >= 0 and dc.sift_budget >= 0


def test_verify_range_errors(table_100k):
    with pytest.raises(TableRangeError):
        verify_main(10**4, table_100k)
    with pytest.raises(ValueError):
        scan_main(5, 4, table_100k)
    with pytest.raises(ValueError):
        verify_main(0, table_100k)
    with pytest.raises(TableRangeError):
        struck_count(10**4, table_100k)
