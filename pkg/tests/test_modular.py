"""Modular arithmetic: primality, inverses, and unique m-th roots."""

import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdapoly.modular import (
    DEFAULT_POLICY,
    PrimalityPolicy,
    is_probable_prime,
    mod_inverse,
    mod_pow,
    mth_root_mod_p,
    primes_up_to,
)

# Known classifications used as fixed points below:
#   2^61 - 1 prime, 2^89 - 1 prime (Mersenne); 2^67 - 1 composite;
#   561 and 41041 are Carmichael numbers.
M61 = 2**61 - 1
M67 = 2**67 - 1
M89 = 2**89 - 1


def test_primes_up_to_frozen():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]


def test_primality_matches_sieve():
    limit = 100_000
    sieve = set(primes_up_to(limit))
    for x in range(limit + 1):
        assert is_probable_prime(x) == (x in sieve), x


@pytest.mark.parametrize(
    "x,expected",
    [
        (0, False),
        (1, False),
        (2, True),
        (561, False),
        (41041, False),
        (M61, True),
        (M67, False),
        (M89, True),
        (M61 * M61, False),
        (M61 * M89, False),
    ],
)
def test_primality_fixed_points(x, expected):
    assert is_probable_prime(x) == expected


def test_primality_probabilistic_path():
    # Force the probabilistic branch by lowering the deterministic cutoff.
    policy = PrimalityPolicy(deterministic_threshold=8, probabilistic_rounds=40)
    rng = random.Random(12345)
    assert is_probable_prime(M61, policy, rng)
    assert not is_probable_prime(M61 * M89, policy, rng)
    # Without an explicit rng the verdict is reproducible.
    assert is_probable_prime(10**18 + 9, policy) == is_probable_prime(10**18 + 9, policy)


def test_policy_validation():
    with pytest.raises(ValueError):
        PrimalityPolicy(probabilistic_rounds=0)


def test_mod_pow_matches_builtin():
    rng = random.Random(7)
    for _ in range(200):
        base = rng.randrange(-1000, 1000)
        exp = rng.randrange(0, 500)
        modulus = rng.randrange(2, 1000)
        assert mod_pow(base, exp, modulus) == pow(base, exp, modulus)


def test_mod_pow_rejects_bad_arguments():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 1)
    with pytest.raises(ValueError):
        mod_pow(2, -1, 5)


def test_mod_inverse_round_trip():
    for m in range(2, 60):
        for x in range(1, m):
            if gcd(x, m) != 1:
                with pytest.raises(ValueError):
                    mod_inverse(x, m)
            else:
                assert x * mod_inverse(x, m) % m == 1


def test_root_frozen_example():
    # In Z/7 with m = 5: 4^5 = 1024 = 146*7 + 2.
    assert mth_root_mod_p(2, 5, 7) == 4
    assert pow(4, 5, 7) == 2


def test_root_edge_cases():
    assert mth_root_mod_p(0, 5, 7) == 0
    assert mth_root_mod_p(7, 5, 7) == 0
    assert mth_root_mod_p(1, 3, 2) == 1
    assert mth_root_mod_p(9, 3, 2) == 1
    assert mth_root_mod_p(5, 1, 13) == 5


def test_root_rejects_bad_arguments():
    with pytest.raises(ValueError):
        mth_root_mod_p(3, 2, 7)  # gcd(2, 6) = 2
    with pytest.raises(ValueError):
        mth_root_mod_p(3, 5, 9)  # composite modulus
    with pytest.raises(ValueError):
        mth_root_mod_p(3, 0, 7)
    with pytest.raises(ValueError):
        mth_root_mod_p(3, 5, 1)


def test_root_inverts_power_map_exhaustively():
    for p in primes_up_to(50):
        for m in range(1, 13):
            if gcd(m, p - 1) != 1:
                continue
            for c in range(p):
                r = mth_root_mod_p(c, m, p, check_prime=False)
                assert 0 <= r < p
                assert pow(r, m, p) == c, (c, m, p)


_PRIMES_FOR_ROOTS = primes_up_to(300)


@given(
    p=st.sampled_from(_PRIMES_FOR_ROOTS),
    m=st.integers(min_value=1, max_value=60),
    c=st.integers(min_value=0, max_value=10**9),
)
@settings(max_examples=300)
def test_root_round_trip_property(p, m, c):
    if gcd(m, p - 1) != 1:
        with pytest.raises(ValueError):
            mth_root_mod_p(c, m, p)
        return
    r = mth_root_mod_p(c, m, p)
    assert pow(r, m, p) == c % p
