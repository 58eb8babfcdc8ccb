"""Exact evaluation of the lambda polynomial.

For odd n > 1 the sum a^n + b^n splits as (a+b) * lambda_n(a,b), where

    lambda_n(a,b) = a^(n-1) - a^(n-2)*b + a^(n-3)*b^2 - ... + b^(n-1)

is the long cofactor.  Two equivalent forms are implemented: the alternating
sum above, and the compact quotient (a^n + b^n) / (a + b) with the special
value n * a^(n-1) when b = -a.  Everything is exact integer arithmetic; no
rounding happens anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from lambdapoly.errors import IntegrityError, ResourceLimitError

# Exponents must fit a machine word.
MAX_EXPONENT = 1 << 32

# Bit-size guard for intermediate values (a^n and friends), ~8 MiB integers.
DEFAULT_MAX_BITS = 1 << 26


def check_odd_exponent(n: int) -> int:
    """Validate an exponent: odd, >= 3, below the machine-word bound."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"exponent must be an integer, got {n!r}")
    if n % 2 == 0:
        raise ValueError(f"exponent must be odd, got {n}")
    if n < 3:
        raise ValueError(f"exponent must be at least 3, got {n}")
    if n >= MAX_EXPONENT:
        raise ValueError(f"exponent must be below 2^32, got {n}")
    return n


@dataclass(frozen=True)
class LambdaInput:
    """A triple (a, b, n): two integers and a validated odd exponent >= 3."""

    a: int
    b: int
    n: int

    def __post_init__(self) -> None:
        check_odd_exponent(self.n)


def _guard_size(inp: LambdaInput, max_bits: int) -> None:
    # a^n dominates every intermediate; reject before allocating huge integers.
    width = max(inp.a.bit_length(), inp.b.bit_length(), 1)
    if inp.n * width + 64 > max_bits:
        raise ResourceLimitError(
            f"intermediate values would exceed {max_bits} bits "
            f"(n={inp.n}, operand width {width} bits)"
        )


def lambda_sum(inp: LambdaInput, *, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Evaluate the alternating sum  sum_{i=0}^{n-1} (-1)^i a^(n-1-i) b^i.

    Horner's scheme over descending powers of a, with a running power of b,
    so the whole sum costs 2(n-1) big-integer multiplies instead of n
    separate exponentiations.
    """
    _guard_size(inp, max_bits)
    a, b, n = inp.a, inp.b, inp.n
    # Rewritten with j = n-1-i the term at a^j carries sign (-1)^j (n-1 even).
    acc = 1
    b_pow = 1
    sign = -1  # sign of the j = n-2 term; n odd makes n-2 odd
    for _ in range(n - 1):
        b_pow *= b
        acc = acc * a + sign * b_pow
        sign = -sign
    return acc


def lambda_quotient(inp: LambdaInput, *, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Evaluate via the quotient form (a^n + b^n) / (a + b).

    The b = -a branch returns n * a^(n-1) directly (detected by exact
    comparison before any division).  On the quotient path the division must
    be exact; a nonzero remainder raises IntegrityError since it can only
    mean an arithmetic bug.
    """
    _guard_size(inp, max_bits)
    a, b, n = inp.a, inp.b, inp.n
    if b == -a:
        return n * a ** (n - 1)
    quot, rem = divmod(a**n + b**n, a + b)
    if rem != 0:
        raise IntegrityError(
            f"(a^n + b^n) not divisible by a + b for a={a}, b={b}, n={n}"
        )
    return quot


def evaluate(
    inp: LambdaInput, *, check: bool = False, max_bits: int = DEFAULT_MAX_BITS
) -> int:
    """Canonical entry point: the value of lambda_n(a, b).

    Uses the quotient form (one exponentiation pair plus one exact division).
    With check=True the alternating sum is evaluated as well and the two
    results are asserted equal.
    """
    value = lambda_quotient(inp, max_bits=max_bits)
    if check:
        other = lambda_sum(inp, max_bits=max_bits)
        if other != value:
            raise IntegrityError(
                f"evaluation forms disagree for {inp}: sum={other}, quotient={value}"
            )
    return value
