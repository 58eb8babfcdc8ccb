"""Factorization of lambda_n(a,b) using its congruence structure.

For coprime a, b and prime n, every prime factor of lambda_n(a,b) is either
n itself or lies in the class 1 mod n; since the value is odd, the non-n
factors are in fact 1 mod 2n.  That cuts trial division down to the wheel
{n} followed by 2kn+1, k = 1, 2, ...

Non-coprime inputs are first reduced through homogeneity:
lambda_n(g*a', g*b') = g^(n-1) * lambda_n(a', b'), so each prime of
g = gcd(a, b) enters as a block p^(n-1) and the wheel only ever runs on the
coprime core, where its justification holds.  Whatever survives trial
division is handed to Pollard-Brent rho, and every extracted factor is
certified with the primality policy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, NamedTuple

from lambdapoly.core import LambdaInput, evaluate
from lambdapoly.errors import CompositeExponentError, IntegrityError
from lambdapoly.modular import DEFAULT_POLICY, PrimalityPolicy, is_probable_prime

# Residue classification of a prime factor relative to the exponent n.
CLASS_EQUALS_N = "equals-n"
CLASS_UNIT_RESIDUE = "unit-residue"
CLASS_ANOMALOUS = "anomalous"

# How a factor was found.
PROV_HOMOGENEITY = "homogeneity-reduction"
PROV_TRIAL = "trial-division"
PROV_RHO = "rho"
PROV_COFACTOR = "cofactor-prime"

# gcd(a, b) carries no special congruence structure; factor it generically.
_GENERAL_TRIAL_BOUND = 1_000_000


@dataclass(frozen=True)
class FactorConfig:
    """Bounds and budgets for the factorization pipeline."""

    trial_bound: int = 10_000_000
    rho_budget: int = 100_000_000
    primality: PrimalityPolicy = DEFAULT_POLICY
    require_prime_n: bool = True
    seed: int = 0


DEFAULT_CONFIG = FactorConfig()


def classify_residue(prime: int, n: int) -> str:
    if prime == n:
        return CLASS_EQUALS_N
    if prime % n == 1:
        return CLASS_UNIT_RESIDUE
    return CLASS_ANOMALOUS


@dataclass(frozen=True)
class AnnotatedFactor:
    """A certified prime factor with its residue class and discovery route."""

    prime: int
    multiplicity: int
    residue_mod_n: int
    classification: str
    provenance: str


@dataclass
class FactorizationResult:
    """Sorted prime factorization of lambda_n(a,b), possibly partial.

    The product of prime^multiplicity over factors, times the unfactored
    cofactor when present, always reproduces lambda_value exactly.
    """

    input: LambdaInput
    lambda_value: int
    factors: list[AnnotatedFactor] = field(default_factory=list)
    fully_factored: bool = True
    unfactored_cofactor: int | None = None

    def recomposed(self) -> int:
        prod = 1
        for f in self.factors:
            prod *= f.prime**f.multiplicity
        if self.unfactored_cofactor is not None:
            prod *= self.unfactored_cofactor
        return prod


class DivisibilityScreen(NamedTuple):
    n_divides_sum: bool
    n_divides_lambda: bool


def wheel_candidates(n: int, bound: int) -> Iterator[int]:
    """Trial divisors for the coprime core: n itself, then 2kn+1 up to bound."""
    if n <= bound:
        yield n
    c = 2 * n + 1
    while c <= bound:
        yield c
        c += 2 * n


def wheel_factor_pass(value: int, n: int, bound: int) -> tuple[dict[int, int], int]:
    """One pure pass of congruence-restricted trial division.

    Divides value by each wheel candidate in turn (stopping once the
    candidate squared exceeds the remaining cofactor) and returns the
    multiset of divisors found plus the remaining cofactor.  No primality
    shortcuts, so this pass is usable as one side of a sieve-completeness
    cross-check.
    """
    found: dict[int, int] = {}
    rem = value
    for c in wheel_candidates(n, bound):
        if c * c > rem and c != n:
            break
        while rem % c == 0:
            rem //= c
            found[c] = found.get(c, 0) + 1
    return found, rem


def _unrestricted_candidates(bound: int) -> Iterator[int]:
    yield 2
    c = 3
    while c <= bound:
        yield c
        c += 2


def _pollard_brent(n: int, max_iters: int, rng: random.Random) -> int | None:
    """A nontrivial factor of composite n via Brent's cycle-finding rho.

    Batches |x - y| products between gcd calls; on a failed cycle the
    polynomial increment is redrawn from rng.  Returns None once max_iters
    squarings have been spent.
    """
    if n % 2 == 0:
        return 2
    iters = 0
    batch = 128
    while iters < max_iters:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        g = q = r = 1
        x = ys = y
        while g == 1 and iters < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            iters += r
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(batch, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                iters += steps
                g = gcd(q, n)
                k += batch
            r *= 2
        if g == n:
            # The batch overshot the cycle; replay one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


class _Collector:
    """Accumulates prime powers, keeping one entry per prime.

    When a prime shows up both in the homogeneity block and the coprime
    core, the core provenance wins (it is the one the congruence audit
    holds to the stricter standard).
    """

    def __init__(self) -> None:
        self.counts: dict[int, int] = {}
        self.provenance: dict[int, str] = {}
        self.leftovers: list[int] = []

    def add(self, prime: int, multiplicity: int, provenance: str) -> None:
        self.counts[prime] = self.counts.get(prime, 0) + multiplicity
        prior = self.provenance.get(prime)
        if prior is None or (prior == PROV_HOMOGENEITY and provenance != PROV_HOMOGENEITY):
            self.provenance[prime] = provenance

    def add_leftover(self, value: int) -> None:
        self.leftovers.append(value)


def _rho_stage(value: int, config: FactorConfig, rng: random.Random,
               out: _Collector, provenance: str) -> None:
    """Split a composite with rho, certify the pieces, record failures."""
    stack = [value]
    while stack:
        x = stack.pop()
        if is_probable_prime(x, config.primality, rng):
            out.add(x, 1, provenance)
            continue
        f = _pollard_brent(x, config.rho_budget, rng)
        if f is None:
            out.add_leftover(x)
            continue
        stack.append(f)
        stack.append(x // f)


def _factor_general(value: int, config: FactorConfig, rng: random.Random,
                    out: _Collector, power: int) -> None:
    """Fully factor an unstructured positive integer (used for gcd(a, b)).

    Each prime p with exponent e contributes multiplicity e * power; an
    unsplittable composite u is recorded as the leftover u^power.
    """
    rem = value
    bound = min(_GENERAL_TRIAL_BOUND, config.trial_bound)
    for c in _unrestricted_candidates(bound):
        if c * c > rem:
            break
        e = 0
        while rem % c == 0:
            rem //= c
            e += 1
        if e:
            out.add(c, e * power, PROV_HOMOGENEITY)
    if rem == 1:
        return
    if is_probable_prime(rem, config.primality, rng):
        out.add(rem, power, PROV_HOMOGENEITY)
        return
    pieces = _Collector()
    _rho_stage(rem, config, rng, pieces, PROV_HOMOGENEITY)
    for p, e in pieces.counts.items():
        out.add(p, e * power, PROV_HOMOGENEITY)
    for u in pieces.leftovers:
        out.add_leftover(u**power)


def _factor_core(value: int, n: int, n_is_prime: bool, config: FactorConfig,
                 rng: random.Random, out: _Collector) -> None:
    """Factor the coprime-core lambda value."""
    rem = value
    if rem == 1:
        return
    if n_is_prime:
        # Strip any power of n before the wheel; its multiplicity is not
        # bounded by the congruence argument, so divide repeatedly.
        while rem % n == 0:
            rem //= n
            out.add(n, 1, PROV_TRIAL)
        candidates: Iterator[int] = wheel_candidates(n, config.trial_bound)
        # n was already handled above.
        next(candidates, None)
    else:
        candidates = _unrestricted_candidates(config.trial_bound)
    if rem == 1:
        return
    if is_probable_prime(rem, config.primality, rng):
        out.add(rem, 1, PROV_COFACTOR)
        return
    exhausted_by_sqrt = False
    for c in candidates:
        if c * c > rem:
            exhausted_by_sqrt = True
            break
        if rem % c:
            continue
        e = 0
        while rem % c == 0:
            rem //= c
            e += 1
        out.add(c, e, PROV_TRIAL)
        if rem == 1:
            return
        if is_probable_prime(rem, config.primality, rng):
            out.add(rem, 1, PROV_COFACTOR)
            return
    # rem > 1 and composite per the test above.
    if exhausted_by_sqrt:
        # No candidate divisor up to sqrt(rem): on the restricted wheel that
        # makes rem prime only by the congruence theorem, so certify instead
        # of assuming, and fall through to rho if certification fails.
        if is_probable_prime(rem, config.primality, rng):
            out.add(rem, 1, PROV_COFACTOR)
            return
    _rho_stage(rem, config, rng, out, PROV_RHO)


def factor_lambda(inp: LambdaInput, config: FactorConfig = DEFAULT_CONFIG) -> FactorizationResult:
    """Factor lambda_n(a,b) through homogeneity reduction plus the wheel.

    Stage 1 pulls out g = gcd(a, b): each prime of g enters with its
    multiplicity scaled by n-1.  Stage 2 factors the coprime-core value with
    the restricted wheel (or an unrestricted one when a composite n was
    explicitly allowed), then rho.  Budgets exhausted means
    fully_factored=False with the surviving composite reported.
    """
    a, b, n = inp.a, inp.b, inp.n
    if a == 0 and b == 0:
        raise ValueError("lambda(0, 0) = 0 cannot be factored")
    if config.trial_bound < n:
        raise ValueError(
            f"trial_bound {config.trial_bound} is below the exponent {n}; "
            "the sieve must be able to test n itself"
        )
    n_is_prime = is_probable_prime(n, config.primality)
    if config.require_prime_n and not n_is_prime:
        raise CompositeExponentError(
            f"exponent {n} is composite; pass require_prime_n=False to factor anyway"
        )

    lam = evaluate(inp)
    rng = random.Random(config.seed)
    out = _Collector()

    g = gcd(a, b)
    if g > 1:
        _factor_general(g, config, rng, out, power=n - 1)
    core = LambdaInput(a // g, b // g, n)
    core_value = evaluate(core)
    _factor_core(core_value, n, n_is_prime, config, rng, out)

    factors = [
        AnnotatedFactor(
            prime=p,
            multiplicity=out.counts[p],
            residue_mod_n=p % n,
            classification=classify_residue(p, n),
            provenance=out.provenance[p],
        )
        for p in sorted(out.counts)
    ]
    cofactor = None
    if out.leftovers:
        cofactor = 1
        for u in out.leftovers:
            cofactor *= u
    result = FactorizationResult(
        input=inp,
        lambda_value=lam,
        factors=factors,
        fully_factored=not out.leftovers,
        unfactored_cofactor=cofactor,
    )
    if result.recomposed() != lam:
        raise IntegrityError(
            f"recomposed factorization does not reproduce lambda for {inp}"
        )
    return result


def audit_congruences(result: FactorizationResult) -> list[AnnotatedFactor]:
    """Check every factor against the predicted residue classes.

    Coprime-core factors (any provenance except homogeneity-reduction) must
    be n itself or 1 mod n.  Homogeneity blocks p^(n-1) are exempt from the
    per-prime rule; for them only the block congruence p^(n-1) = 1 (mod n)
    is checked, and p = n is excused from that as well.  Returns the
    violating factors; an empty list is the expected outcome.
    """
    if not result.fully_factored:
        raise ValueError("audit requires a complete factorization")
    n = result.input.n
    if not is_probable_prime(n):
        raise ValueError(f"audit is only meaningful for prime exponents, got n={n}")
    violations = []
    for f in result.factors:
        if f.provenance == PROV_HOMOGENEITY:
            if f.prime != n and pow(f.prime, n - 1, n) != 1:
                violations.append(f)
        elif f.classification == CLASS_ANOMALOUS:
            violations.append(f)
    return violations


def divisibility_screen(
    inp: LambdaInput, policy: PrimalityPolicy = DEFAULT_POLICY
) -> DivisibilityScreen:
    """Whether n divides a+b and whether n divides lambda_n(a,b).

    For prime n those two answers are always equal, which makes the pair a
    cheap pre-factorization screen for the visible power of n.
    """
    if not is_probable_prime(inp.n, policy):
        raise ValueError(f"divisibility screen requires a prime exponent, got {inp.n}")
    return DivisibilityScreen(
        n_divides_sum=(inp.a + inp.b) % inp.n == 0,
        n_divides_lambda=evaluate(inp) % inp.n == 0,
    )
