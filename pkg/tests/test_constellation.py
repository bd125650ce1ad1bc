import pytest

from oracles import trial_is_prime, tuple_prime_count
from wheel7.constellation import (
    TUPLE_GAPS,
    count_sevens,
    enumerate_sevens,
    gap_pairs,
    tuple_report,
)
from wheel7.errors import TableRangeError
from wheel7.sieve import WHEEL

SEVENS_BELOW_189 = [0, 1, 2, 49, 62, 79, 89, 188]


def test_block_zero_report(table_1m):
    r = tuple_report(0, table_1m)
    assert r.prime_mask == (False, True, True, True, True, True, True, True)
    assert r.prime_count == 7
    assert r.elements == (1, 7, 11, 13, 17, 19, 23, 29)


def test_block_one_single_composite_49(table_1m):
    r = tuple_report(1, table_1m)
    assert r.prime_count == 7
    composites = [e for e, ok in zip(r.elements, r.prime_mask) if not ok]
    assert composites == [49]


def test_block_three_two_multiples_of_seven(table_1m):
    r = tuple_report(3, table_1m)
    assert r.prime_count == 6
    assert not r.prime_mask[WHEEL.index(1)]  # 91 = 7 * 13
    assert not r.prime_mask[WHEEL.index(29)]  # 119 = 7 * 17


def test_reports_match_trial_division(table_1m):
    for x in range(0, 300):
        assert tuple_report(x, table_1m).prime_count == tuple_prime_count(x), x


def test_elements_structure(table_1m):
    for x in (0, 7, 123, 4567):
        r = tuple_report(x, table_1m)
        assert all(e % 30 == i for e, i in zip(r.elements, WHEEL))
        assert all(a < b for a, b in zip(r.elements, r.elements[1:]))
        assert r.prime_count == sum(r.prime_mask)


def test_seven_divisibility_pattern():
    # for x >= 1: two elements divisible by 7 iff x = 3 (mod 7), else one
    for x in range(1, 700):
        hits = sum(1 for i in WHEEL if (30 * x + i) % 7 == 0)
        assert hits == (2 if x % 7 == 3 else 1), x


def test_prime_count_capped_at_seven(table_1m):
    for x in range(1, 2000):
        r = tuple_report(x, table_1m)
        assert r.prime_count <= 7
        if x % 7 == 3:
            assert r.prime_count <= 6


def test_count_sevens_examples(table_1m):
    assert count_sevens(30, table_1m) == 1
    assert count_sevens(121, table_1m) == 3
    assert count_sevens(5670, table_1m) == 8


def test_enumerate_examples(table_1m):
    assert enumerate_sevens(2, table_1m) == [0, 1, 2]
    assert enumerate_sevens(48, table_1m) == [0, 1, 2]
    assert enumerate_sevens(188, table_1m) == SEVENS_BELOW_189


def test_enumerate_count_consistency(table_1m):
    for s in (30, 121, 150, 5670, 10**5):
        assert len(enumerate_sevens(s // 30 - 1, table_1m)) == count_sevens(s, table_1m)


def test_count_sevens_monotone_steps(table_1m):
    prev = count_sevens(30, table_1m)
    for s in range(60, 20_000, 30):
        cur = count_sevens(s, table_1m)
        assert cur - prev in (0, 1)
        prev = cur


def test_enumerated_blocks_verified_by_trial_division(table_1m):
    for x in enumerate_sevens(table_1m.limit // 30 - 1, table_1m)[:40]:
        assert tuple_prime_count(x) == 7, x


def test_gap_pairs_block_zero(table_1m):
    gaps = gap_pairs(0, table_1m)
    assert (7, 29) in gaps.witnesses
    assert 22 in gaps.gaps


def test_gap_pairs_block_one(table_1m):
    gaps = gap_pairs(1, table_1m)
    assert gaps.gaps == frozenset({2, 4, 6, 10, 12, 16, 18, 22, 28})
    assert all(q - p in gaps.gaps for p, q in gaps.witnesses)
    # 49 is composite, so no witness may involve it
    assert all(49 not in pair for pair in gaps.witnesses)


def test_gap_pairs_block_three(table_1m):
    gaps = gap_pairs(3, table_1m)
    assert (101, 103) in gaps.witnesses
    assert 2 in gaps.gaps


def test_gap_witnesses_are_prime(table_1m):
    for x in (0, 1, 2, 49, 62, 79, 89, 188, 1000):
        gaps = gap_pairs(x, table_1m)
        assert gaps.gaps <= TUPLE_GAPS
        for p, q in gaps.witnesses:
            assert trial_is_prime(p) and trial_is_prime(q)
            assert p < q


def test_gaps_are_differences_of_wheel_residues():
    diffs = {j - i for i in WHEEL for j in WHEEL if j > i}
    assert TUPLE_GAPS == diffs


def test_range_errors(table_100k):
    with pytest.raises(TableRangeError):
        tuple_report(table_100k.limit // 30 + 1, table_100k)
    with pytest.raises(ValueError):
        count_sevens(29, table_100k)
    with pytest.raises(TableRangeError):
        count_sevens(30 * (table_100k.limit // 30 + 5), table_100k)
    with pytest.raises(ValueError):
        tuple_report(-1, table_100k)
