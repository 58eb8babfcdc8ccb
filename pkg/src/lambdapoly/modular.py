"""Number-theoretic primitives: gcd, modular arithmetic, m-th roots, primality.

Residues are always normalized to [0, modulus).  The probabilistic primality
path draws witnesses from a caller-supplied random.Random so runs stay
reproducible; nothing here touches global RNG state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

__all__ = [
    "PrimalityPolicy",
    "DEFAULT_POLICY",
    "gcd",
    "mod_pow",
    "mod_inverse",
    "mth_root_mod_p",
    "is_probable_prime",
    "primes_up_to",
]

# Minimal deterministic Miller-Rabin witness bases, tiered by input size.
# Each set is a published exact basis for every odd number below its bound;
# the last tier covers well past 2^64.
_WITNESS_TIERS: tuple[tuple[int, tuple[int, ...]], ...] = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1_662_803)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)
_DETERMINISTIC_LIMIT = _WITNESS_TIERS[-1][0]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimalityPolicy:
    """How hard to try when certifying primality.

    Inputs whose bit size is at most deterministic_threshold go through the
    fixed witness tiers (an exact answer); larger inputs get
    probabilistic_rounds random witnesses, for an error probability of at
    most 4^(-rounds) on composites.
    """

    deterministic_threshold: int = 64
    probabilistic_rounds: int = 64

    def __post_init__(self) -> None:
        if self.probabilistic_rounds < 1:
            raise ValueError("probabilistic_rounds must be >= 1")


DEFAULT_POLICY = PrimalityPolicy()


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus, normalized to [0, modulus)."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError(f"exponent must be non-negative, got {exp}")
    return pow(base, exp, modulus)


def mod_inverse(x: int, m: int) -> int:
    """The y in [0, m) with x*y = 1 (mod m); requires gcd(x, m) = 1."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    try:
        return pow(x, -1, m)
    except ValueError:
        raise ValueError(f"{x} has no inverse modulo {m}: gcd = {gcd(x, m)}") from None


def _miller_rabin(x: int, bases, d: int, r: int) -> bool:
    """True iff x survives every witness in bases (x odd, x-1 = d * 2^r)."""
    for a in bases:
        a %= x
        if a == 0:
            continue
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(r - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def is_probable_prime(
    x: int,
    policy: PrimalityPolicy = DEFAULT_POLICY,
    rng: random.Random | None = None,
) -> bool:
    """Primality test: exact below the deterministic threshold, Miller-Rabin
    with random witnesses above it.

    When rng is omitted one is derived from x itself, so repeated calls are
    reproducible without any shared state.
    """
    if x < 2:
        return False
    for p in _SMALL_PRIMES:
        if x == p:
            return True
        if x % p == 0:
            return False

    d = x - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    if x < _DETERMINISTIC_LIMIT and x.bit_length() <= policy.deterministic_threshold:
        for bound, bases in _WITNESS_TIERS:
            if x < bound:
                return _miller_rabin(x, bases, d, r)
    if rng is None:
        rng = random.Random(x)
    bases = [rng.randrange(2, x - 1) for _ in range(policy.probabilistic_rounds)]
    return _miller_rabin(x, bases, d, r)


def mth_root_mod_p(
    c: int,
    m: int,
    p: int,
    *,
    check_prime: bool = True,
    policy: PrimalityPolicy = DEFAULT_POLICY,
) -> int:
    """The unique r in [0, p) with r^m = c (mod p).

    Requires p prime and gcd(m, p-1) = 1; under those hypotheses raising to
    the m-th power permutes Z/p, and the inverse map is c -> c^(m^-1 mod p-1).
    check_prime=False skips the primality check for callers that already
    certified p.
    """
    if m < 1:
        raise ValueError(f"root exponent must be positive, got {m}")
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    if check_prime and not is_probable_prime(p, policy):
        raise ValueError(f"modulus {p} is not prime")
    if gcd(m, p - 1) != 1:
        raise ValueError(
            f"no unique root: gcd({m}, {p - 1}) = {gcd(m, p - 1)} != 1"
        )
    c %= p
    if p == 2 or c == 0:
        return c
    return pow(c, mod_inverse(m, p - 1), p)


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by a plain byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if sieve[p]:
            start = p * p
            sieve[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
        p += 1
    return [i for i in range(2, limit + 1) if sieve[i]]
