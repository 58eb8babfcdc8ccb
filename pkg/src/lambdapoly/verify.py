"""Exhaustive grid verification of the claim catalog for lambda_n(a,b).

Every numbered claim the package relies on is encoded as a predicate that
either passes, fails with a counterexample detail, or is inapplicable when
its hypotheses (coprimality, prime exponent) do not hold at a grid point.
Running the full catalog over a grid doubles as the package's own
integration test: the claims are theorems, so any failure is an
implementation bug.

Grid iteration is row-major over (n, a, b): n in the order given, then a
ascending, then b ascending.  Counterexample ordering follows that order,
which keeps reports stable and lets partitioned runs merge exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Iterator

from lambdapoly.core import LambdaInput, evaluate, lambda_quotient, lambda_sum
from lambdapoly.errors import ResourceLimitError
from lambdapoly.factor import (
    CLASS_ANOMALOUS,
    DEFAULT_CONFIG,
    FactorConfig,
    FactorizationResult,
    factor_lambda,
)
from lambdapoly.modular import is_probable_prime, mth_root_mod_p, primes_up_to

PASS = "pass"
FAIL = "fail"
SKIP = "inapplicable"

SKIP_HYPOTHESIS = "hypothesis-failed"
SKIP_RESOURCE = "resource-limit"
SKIP_INCOMPLETE = "factorization-incomplete"

# Scale factors exercised by the homogeneity predicate.
_HOMOGENEITY_SCALES = tuple(range(-10, 11))
# Power pairs exercised by the coprime-powers predicate.
_POWER_RANGE = (1, 2, 3)
# Prime moduli bound for the per-exponent root-bijection predicate.
_ROOT_PRIME_BOUND = 50

DEFAULT_COUNTEREXAMPLE_CAP = 20


@dataclass(frozen=True)
class GridSpec:
    """An inclusive (a, b) rectangle crossed with a list of odd exponents."""

    a_min: int
    a_max: int
    b_min: int
    b_max: int
    n_values: tuple[int, ...]
    coprime_only: bool = False
    exclude_zero_pair: bool = True

    def __post_init__(self) -> None:
        if self.a_min > self.a_max:
            raise ValueError(f"empty a range [{self.a_min}, {self.a_max}]")
        if self.b_min > self.b_max:
            raise ValueError(f"empty b range [{self.b_min}, {self.b_max}]")
        if not self.n_values:
            raise ValueError("n_values must be non-empty")
        object.__setattr__(self, "n_values", tuple(self.n_values))
        for n in self.n_values:
            LambdaInput(0, 1, n)  # reuse exponent validation


@dataclass(frozen=True)
class PropertyOutcome:
    status: str
    detail: str | None = None
    skip_reason: str | None = None


_PASS = PropertyOutcome(PASS)


def _fail(detail: str) -> PropertyOutcome:
    return PropertyOutcome(FAIL, detail=detail)


def _skip(reason: str) -> PropertyOutcome:
    return PropertyOutcome(SKIP, skip_reason=reason)


@lru_cache(maxsize=None)
def _prime_exponent(n: int) -> bool:
    return is_probable_prime(n)


class PointContext:
    """Lazy shared state for one grid point.

    The lambda value and (costly) factorization are computed at most once
    per point no matter how many predicates ask for them.
    """

    __slots__ = ("a", "b", "n", "config", "_lam", "_fact")

    def __init__(self, a: int, b: int, n: int, config: FactorConfig) -> None:
        self.a = a
        self.b = b
        self.n = n
        self.config = config
        self._lam: int | None = None
        self._fact: FactorizationResult | None = None

    @property
    def lam(self) -> int:
        if self._lam is None:
            self._lam = evaluate(LambdaInput(self.a, self.b, self.n))
        return self._lam

    @property
    def factorization(self) -> FactorizationResult:
        if self._fact is None:
            self._fact = factor_lambda(LambdaInput(self.a, self.b, self.n), self.config)
        return self._fact

    def coprime(self) -> bool:
        return gcd(self.a, self.b) == 1


# --------------------------------------------------------------------------
# Predicates
# --------------------------------------------------------------------------


def _p_divisor_of_sum(ctx: PointContext) -> PropertyOutcome:
    # d | a and d does not divide b forces d not to divide a+b.
    a, b = ctx.a, ctx.b
    if a == 0:
        return _PASS
    m = abs(a)
    for d in range(1, isqrt(m) + 1):
        if m % d:
            continue
        for div in (d, m // d):
            if b % div and (a + b) % div == 0:
                return _fail(f"d={div} divides a and a+b but not b")
    return _PASS


def _p_product_coprime(ctx: PointContext) -> PropertyOutcome:
    if not ctx.coprime():
        return _skip(SKIP_HYPOTHESIS)
    g = gcd(ctx.a * ctx.b, ctx.a + ctx.b)
    if g != 1:
        return _fail(f"gcd(a*b, a+b) = {g}")
    return _PASS


def _p_power_coprime(ctx: PointContext) -> PropertyOutcome:
    if not ctx.coprime():
        return _skip(SKIP_HYPOTHESIS)
    ab, s = ctx.a * ctx.b, ctx.a + ctx.b
    for m1 in _POWER_RANGE:
        for m2 in _POWER_RANGE:
            g = gcd(ab**m1, s**m2)
            if g != 1:
                return _fail(f"gcd((a*b)^{m1}, (a+b)^{m2}) = {g}")
    return _PASS


def _p_definition_equivalence(ctx: PointContext) -> PropertyOutcome:
    inp = LambdaInput(ctx.a, ctx.b, ctx.n)
    s = lambda_sum(inp)
    q = lambda_quotient(inp)
    if s != q:
        return _fail(f"sum form {s} != quotient form {q}")
    return _PASS


def _p_non_negative(ctx: PointContext) -> PropertyOutcome:
    if ctx.lam < 0:
        return _fail(f"lambda = {ctx.lam} < 0")
    return _PASS


def _p_positive(ctx: PointContext) -> PropertyOutcome:
    if ctx.a == 0 and ctx.b == 0:
        return _skip(SKIP_HYPOTHESIS)
    if ctx.lam <= 0:
        return _fail(f"lambda = {ctx.lam} <= 0 for nonzero input")
    return _PASS


def _p_symmetry(ctx: PointContext) -> PropertyOutcome:
    swapped = evaluate(LambdaInput(ctx.b, ctx.a, ctx.n))
    if swapped != ctx.lam:
        return _fail(f"lambda(b,a) = {swapped} != {ctx.lam}")
    return _PASS


def _p_homogeneity(ctx: PointContext) -> PropertyOutcome:
    for d in _HOMOGENEITY_SCALES:
        scaled = evaluate(LambdaInput(d * ctx.a, d * ctx.b, ctx.n))
        expected = d ** (ctx.n - 1) * ctx.lam
        if scaled != expected:
            return _fail(f"scale d={d}: got {scaled}, expected {expected}")
    return _PASS


def _p_sign_symmetry(ctx: PointContext) -> PropertyOutcome:
    left = evaluate(LambdaInput(-ctx.a, ctx.b, ctx.n))
    right = evaluate(LambdaInput(ctx.a, -ctx.b, ctx.n))
    if left != right:
        return _fail(f"lambda(-a,b) = {left} != lambda(a,-b) = {right}")
    return _PASS


def _p_evenness(ctx: PointContext) -> PropertyOutcome:
    negated = evaluate(LambdaInput(-ctx.a, -ctx.b, ctx.n))
    if negated != ctx.lam:
        return _fail(f"lambda(-a,-b) = {negated} != {ctx.lam}")
    return _PASS


def _p_coprime_to_inputs(ctx: PointContext) -> PropertyOutcome:
    if not ctx.coprime():
        return _skip(SKIP_HYPOTHESIS)
    ga, gb = gcd(ctx.lam, ctx.a), gcd(ctx.lam, ctx.b)
    if ga != 1 or gb != 1:
        return _fail(f"gcd(lambda, a) = {ga}, gcd(lambda, b) = {gb}")
    return _PASS


def _p_common_divisors_divide_n(ctx: PointContext) -> PropertyOutcome:
    if not ctx.coprime():
        return _skip(SKIP_HYPOTHESIS)
    g = gcd(ctx.a + ctx.b, ctx.lam)
    if ctx.n % g != 0:
        return _fail(f"gcd(a+b, lambda) = {g} does not divide n")
    return _PASS


def _p_divisibility_transfer(ctx: PointContext) -> PropertyOutcome:
    if not _prime_exponent(ctx.n):
        return _skip(SKIP_HYPOTHESIS)
    sum_div = (ctx.a + ctx.b) % ctx.n == 0
    lam_div = ctx.lam % ctx.n == 0
    if sum_div != lam_div:
        return _fail(f"n | a+b is {sum_div} but n | lambda is {lam_div}")
    return _PASS


@lru_cache(maxsize=None)
def _root_bijection_for_exponent(n: int) -> str | None:
    """Check x -> x^n mod p over small primes p with gcd(n, p-1) = 1.

    Returns None on success or a failure detail.  Depends only on n, so the
    result is shared across the whole grid row.
    """
    for p in primes_up_to(_ROOT_PRIME_BOUND):
        if gcd(n, p - 1) != 1:
            continue
        image = [pow(x, n, p) for x in range(p)]
        if len(set(image)) != p:
            return f"x^{n} mod {p} is not a bijection"
        for c in range(p):
            r = mth_root_mod_p(c, n, p, check_prime=False)
            if pow(r, n, p) != c:
                return f"root of {c} under exponent {n} mod {p} does not invert"
    return None


def _p_unique_roots(ctx: PointContext) -> PropertyOutcome:
    detail = _root_bijection_for_exponent(ctx.n)
    if detail is not None:
        return _fail(detail)
    return _PASS


def _factorization_guarded(ctx: PointContext) -> FactorizationResult | PropertyOutcome:
    if not (_prime_exponent(ctx.n) and ctx.coprime()):
        return _skip(SKIP_HYPOTHESIS)
    fact = ctx.factorization
    if not fact.fully_factored:
        return _skip(SKIP_INCOMPLETE)
    return fact


def _p_factor_congruence(ctx: PointContext) -> PropertyOutcome:
    fact = _factorization_guarded(ctx)
    if isinstance(fact, PropertyOutcome):
        return fact
    bad = [f for f in fact.factors if f.classification == CLASS_ANOMALOUS]
    if bad:
        culprits = ", ".join(f"{f.prime} = {f.residue_mod_n} (mod n)" for f in bad)
        return _fail(f"anomalous factors: {culprits}")
    return _PASS


def _p_factor_size(ctx: PointContext) -> PropertyOutcome:
    fact = _factorization_guarded(ctx)
    if isinstance(fact, PropertyOutcome):
        return fact
    small = [f.prime for f in fact.factors if f.prime != ctx.n and f.prime <= ctx.n]
    if small:
        return _fail(f"factors not exceeding n: {small}")
    return _PASS


def _p_oddness(ctx: PointContext) -> PropertyOutcome:
    if not (_prime_exponent(ctx.n) and ctx.coprime()):
        return _skip(SKIP_HYPOTHESIS)
    if ctx.lam % 2 == 0:
        return _fail(f"lambda = {ctx.lam} is even")
    return _PASS


def _p_unit_residue_coprime(ctx: PointContext) -> PropertyOutcome:
    if not (_prime_exponent(ctx.n) and ctx.coprime()):
        return _skip(SKIP_HYPOTHESIS)
    residue = ctx.lam % ctx.n
    if residue not in (0, 1):
        return _fail(f"lambda = {residue} (mod n), expected 0 or 1")
    return _PASS


def _p_unit_residue_general(ctx: PointContext) -> PropertyOutcome:
    if not _prime_exponent(ctx.n):
        return _skip(SKIP_HYPOTHESIS)
    residue = ctx.lam % ctx.n
    if residue not in (0, 1):
        return _fail(f"lambda = {residue} (mod n), expected 0 or 1")
    return _PASS


def _p_factor_identity(ctx: PointContext) -> PropertyOutcome:
    a, b, n = ctx.a, ctx.b, ctx.n
    if (a + b) * ctx.lam != a**n + b**n:
        return _fail("(a+b) * lambda != a^n + b^n")
    return _PASS


@dataclass(frozen=True)
class PropertyDef:
    id: str
    claim: str
    fn: Callable[[PointContext], PropertyOutcome]


PROPERTIES: dict[str, PropertyDef] = {
    p.id: p
    for p in (
        PropertyDef("L1.1", "a divisor of a that misses b never divides a+b", _p_divisor_of_sum),
        PropertyDef("L1.2", "coprime a,b: a*b and a+b are coprime", _p_product_coprime),
        PropertyDef("C1.3", "coprime a,b: (a*b)^m1 and (a+b)^m2 stay coprime", _p_power_coprime),
        PropertyDef("DEF-EQUIV", "alternating-sum and quotient forms agree", _p_definition_equivalence),
        PropertyDef("L2.2", "lambda is non-negative", _p_non_negative),
        PropertyDef("R2.3", "lambda is positive once (a,b) != (0,0)", _p_positive),
        PropertyDef("L2.4", "lambda is symmetric in a and b", _p_symmetry),
        PropertyDef("L2.5", "lambda(d*a, d*b) = d^(n-1) * lambda(a,b)", _p_homogeneity),
        PropertyDef("C2.6", "lambda(-a, b) = lambda(a, -b)", _p_sign_symmetry),
        PropertyDef("C2.7", "lambda(-a, -b) = lambda(a, b)", _p_evenness),
        PropertyDef("L2.8", "coprime a,b: lambda is coprime to a and b", _p_coprime_to_inputs),
        PropertyDef("P2.9", "coprime a,b: gcd(a+b, lambda) divides n", _p_common_divisors_divide_n),
        PropertyDef("P2.10", "prime n: n divides a+b iff n divides lambda", _p_divisibility_transfer),
        PropertyDef("L2.11", "x -> x^n mod p is a bijection when gcd(n, p-1) = 1", _p_unique_roots),
        PropertyDef("T2.12", "prime n, coprime a,b: prime factors are n or 1 mod n", _p_factor_congruence),
        PropertyDef("C2.14", "prime n, coprime a,b: factors other than n exceed n", _p_factor_size),
        PropertyDef("C2.15", "prime n, coprime a,b: lambda is odd", _p_oddness),
        PropertyDef("C2.16", "prime n, coprime a,b: lambda mod n is 0 or 1", _p_unit_residue_coprime),
        PropertyDef("L2.17", "prime n, any a,b: lambda mod n is 0 or 1", _p_unit_residue_general),
        PropertyDef("FACTOR-IDENTITY", "(a+b) * lambda = a^n + b^n", _p_factor_identity),
    )
}

PROPERTY_IDS: tuple[str, ...] = tuple(PROPERTIES)


def check_property(
    property_id: str,
    a: int,
    b: int,
    n: int,
    config: FactorConfig = DEFAULT_CONFIG,
) -> PropertyOutcome:
    """Evaluate one catalog predicate at one point."""
    prop = PROPERTIES.get(property_id)
    if prop is None:
        raise ValueError(f"unknown property id {property_id!r}")
    ctx = PointContext(a, b, n, config)
    return _run_predicate(prop, ctx)


def _run_predicate(prop: PropertyDef, ctx: PointContext) -> PropertyOutcome:
    try:
        return prop.fn(ctx)
    except ResourceLimitError:
        return _skip(SKIP_RESOURCE)


# --------------------------------------------------------------------------
# Suite execution and reports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    ordinal: int
    a: int
    b: int
    n: int
    detail: str


@dataclass
class PropertyStats:
    checked: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)


@dataclass
class PropertyReport:
    """Aggregated verdicts for a suite run; deterministic apart from wall_time."""

    grid: GridSpec
    properties: tuple[str, ...]
    seed: int
    counterexample_cap: int
    points: int
    stats: dict[str, PropertyStats]
    wall_time: float

    @property
    def failures(self) -> int:
        return sum(s.failed for s in self.stats.values())


def grid_points(grid: GridSpec) -> Iterator[tuple[int, int, int, int]]:
    """Yield (ordinal, a, b, n) in the documented row-major order."""
    ordinal = 0
    for n in grid.n_values:
        for a in range(grid.a_min, grid.a_max + 1):
            for b in range(grid.b_min, grid.b_max + 1):
                if grid.exclude_zero_pair and a == 0 and b == 0:
                    continue
                if grid.coprime_only and gcd(a, b) != 1:
                    continue
                yield ordinal, a, b, n
                ordinal += 1


def run_suite(
    grid: GridSpec,
    properties: list[str] | tuple[str, ...] | None = None,
    config: FactorConfig = DEFAULT_CONFIG,
    seed: int = 0,
    *,
    counterexample_cap: int = DEFAULT_COUNTEREXAMPLE_CAP,
    point_range: tuple[int, int] | None = None,
) -> PropertyReport:
    """Check every selected property at every grid point with valid guards.

    point_range (start, stop) restricts the run to a slice of the point
    enumeration so partitions can run independently and be merged.
    """
    if properties is None:
        selected = PROPERTY_IDS
    else:
        selected = tuple(properties)
        for pid in selected:
            if pid not in PROPERTIES:
                raise ValueError(f"unknown property id {pid!r}")
    run_config = replace(config, seed=seed)
    stats = {pid: PropertyStats() for pid in selected}
    points = 0
    started = time.perf_counter()
    for ordinal, a, b, n in grid_points(grid):
        if point_range is not None and not point_range[0] <= ordinal < point_range[1]:
            continue
        points += 1
        ctx = PointContext(a, b, n, run_config)
        for pid in selected:
            outcome = _run_predicate(PROPERTIES[pid], ctx)
            st = stats[pid]
            if outcome.status == SKIP:
                st.skipped += 1
                continue
            st.checked += 1
            if outcome.status == PASS:
                st.passed += 1
            else:
                st.failed += 1
                if len(st.counterexamples) < counterexample_cap:
                    st.counterexamples.append(
                        Counterexample(ordinal, a, b, n, outcome.detail or "")
                    )
    return PropertyReport(
        grid=grid,
        properties=selected,
        seed=seed,
        counterexample_cap=counterexample_cap,
        points=points,
        stats=stats,
        wall_time=time.perf_counter() - started,
    )


def merge_reports(fragments: list[PropertyReport]) -> PropertyReport:
    """Combine partition runs into one report.

    Counts add; counterexamples interleave by grid ordinal and are re-capped,
    so the merged report is byte-identical to a single-threaded run of the
    same grid.
    """
    if not fragments:
        raise ValueError("nothing to merge")
    first = fragments[0]
    for other in fragments[1:]:
        if (other.grid, other.properties, other.seed, other.counterexample_cap) != (
            first.grid,
            first.properties,
            first.seed,
            first.counterexample_cap,
        ):
            raise ValueError("fragments disagree on grid, properties, seed, or cap")
    stats: dict[str, PropertyStats] = {}
    for pid in first.properties:
        merged = PropertyStats()
        examples: list[Counterexample] = []
        for frag in fragments:
            st = frag.stats[pid]
            merged.checked += st.checked
            merged.passed += st.passed
            merged.failed += st.failed
            merged.skipped += st.skipped
            examples.extend(st.counterexamples)
        examples.sort(key=lambda c: c.ordinal)
        merged.counterexamples = examples[: first.counterexample_cap]
        stats[pid] = merged
    return PropertyReport(
        grid=first.grid,
        properties=first.properties,
        seed=first.seed,
        counterexample_cap=first.counterexample_cap,
        points=sum(f.points for f in fragments),
        stats=stats,
        wall_time=sum(f.wall_time for f in fragments),
    )


@dataclass
class RootBijectionCheck:
    passed: bool
    cases: int
    failures: list[str] = field(default_factory=list)


def check_root_bijection(p_max: int, m_max: int) -> RootBijectionCheck:
    """Exhaustively verify unique m-th roots modulo every prime p <= p_max.

    For every prime p and every m <= m_max with gcd(m, p-1) = 1, confirms
    that x -> x^m mod p is a bijection on [0, p) and that root extraction
    inverts it pointwise.  Pairs with gcd(m, p-1) > 1 are out of hypothesis
    and simply not counted.
    """
    if p_max < 2 or m_max < 2:
        raise ValueError("p_max and m_max must both be >= 2")
    failures: list[str] = []
    cases = 0
    for p in primes_up_to(p_max):
        for m in range(1, m_max + 1):
            if gcd(m, p - 1) != 1:
                continue
            cases += 1
            image = [pow(x, m, p) for x in range(p)]
            if len(set(image)) != p:
                failures.append(f"x^{m} mod {p} is not a bijection")
                continue
            for c in range(p):
                r = mth_root_mod_p(c, m, p, check_prime=False)
                if pow(r, m, p) != c:
                    failures.append(f"root({c}, m={m}, p={p}) = {r} does not invert")
                    break
    return RootBijectionCheck(passed=not failures, cases=cases, failures=failures)
