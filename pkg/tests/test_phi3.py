import random
from math import gcd

import pytest

from oracles import phi3_direct, trial_is_prime
from wheel7.errors import CapExceededError
from wheel7.phi3 import factorize, phi3_bruteforce, phi3_formula

PAPER_VALUES = {1: 1, 7: 0, 11: 5, 121: 55, 169: 65}


def test_factorize_examples():
    assert factorize(1) == []
    assert factorize(30) == [(2, 1), (3, 1), (5, 1)]
    assert factorize(17017) == [(7, 1), (11, 1), (13, 1), (17, 1)]


def test_factorize_reconstructs_and_is_canonical():
    rng = random.Random(7)
    for m in [2, 4, 997, 2**10 * 3**4, 999_983] + [rng.randrange(1, 10**7) for _ in range(50)]:
        pairs = factorize(m)
        value = 1
        for p, k in pairs:
            assert k >= 1
            assert trial_is_prime(p)
            value *= p**k
        assert value == m
        assert [p for p, _ in pairs] == sorted({p for p, _ in pairs})


def test_paper_values():
    for m, want in PAPER_VALUES.items():
        assert phi3_formula(m) == want
        assert phi3_bruteforce(m) == want


def test_formula_matches_bruteforce_small():
    for m in range(1, 800):
        assert phi3_formula(m) == phi3_bruteforce(m), m


def test_formula_matches_direct_oracle_sampled():
    rng = random.Random(11)
    for m in (rng.randrange(1, 5000) for _ in range(60)):
        assert phi3_formula(m) == phi3_direct(m), m


def test_prime_power_rules():
    for q in (2, 3, 5):
        for k in range(1, 13):
            assert phi3_formula(q**k) == q**k
    for s in range(1, 7):
        assert phi3_formula(7**s) == 0
    assert phi3_formula(11**2) == 11**2 - 6 * 11
    assert phi3_formula(13**2) == 13**2 - 8 * 13
    for p in (13, 17, 101, 9973):
        assert phi3_formula(p) == p - 8


def test_multiplicative_on_coprime_parts():
    rng = random.Random(13)
    primes = [13, 17, 19, 23, 29, 31]
    for _ in range(40):
        p = rng.choice(primes)
        m = rng.randrange(1, 400)
        if m % p == 0 or m % 7 == 0:
            continue
        assert gcd(p, m) == 1
        assert phi3_formula(p * m) == phi3_formula(p) * phi3_formula(m)


def test_any_multiple_of_seven_vanishes():
    for m in (7, 14, 77, 7 * 13**2, 7**3 * 11):
        assert phi3_formula(m) == 0
        assert phi3_bruteforce(m) == 0


def test_argument_and_cap_errors():
    with pytest.raises(ValueError):
        phi3_formula(0)
    with pytest.raises(ValueError):
        phi3_bruteforce(0)
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(CapExceededError):
        phi3_bruteforce(10**6 + 1)
