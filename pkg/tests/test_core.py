"""Evaluation of lambda_n(a,b): frozen values, an independent oracle, and
input validation."""

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdapoly.core import (
    LambdaInput,
    check_odd_exponent,
    evaluate,
    lambda_quotient,
    lambda_sum,
)
from lambdapoly.errors import ResourceLimitError


def oracle(a: int, b: int, n: int) -> int:
    # Term-by-term alternating sum, deliberately naive and separate from the
    # Horner evaluation in the library.
    return sum((-1) ** i * a ** (n - 1 - i) * b**i for i in range(n))


# Hand-computed reference values.
FROZEN = [
    (2, 1, 3, 3),  # 4 - 2 + 1
    (3, 2, 5, 55),  # 81 - 54 + 36 - 24 + 16
    (2, 1, 7, 43),  # 64 - 32 + 16 - 8 + 4 - 2 + 1
    (4, 2, 3, 12),  # 16 - 8 + 4
    (2, 1, 11, 683),  # (2048 + 1) / 3
    (0, 0, 3, 0),
    (1, 0, 3, 1),
    (0, 5, 3, 25),
    (-2, 3, 3, 19),  # 4 + 6 + 9
    (10, -3, 5, 14251),  # 10000 + 3000 + 900 + 270 + 81 = (10^5 - 3^5) / 7
]


@pytest.mark.parametrize("a,b,n,expected", FROZEN)
def test_frozen_values(a, b, n, expected):
    inp = LambdaInput(a, b, n)
    assert lambda_sum(inp) == expected
    assert lambda_quotient(inp) == expected
    assert evaluate(inp) == expected
    assert oracle(a, b, n) == expected


@pytest.mark.parametrize("a,n", [(1, 5), (2, 3), (-2, 3), (3, 7), (0, 3), (-5, 9)])
def test_negated_pair_closed_form(a, n):
    # b = -a makes the quotient form degenerate; the value is n * a^(n-1).
    inp = LambdaInput(a, -a, n)
    expected = n * a ** (n - 1)
    assert lambda_quotient(inp) == expected
    assert lambda_sum(inp) == expected
    assert oracle(a, -a, n) == expected


def test_matches_oracle_on_grid():
    for n in (3, 5, 9):
        for a in range(-12, 13):
            for b in range(-12, 13):
                inp = LambdaInput(a, b, n)
                expected = oracle(a, b, n)
                assert lambda_sum(inp) == expected, (a, b, n)
                assert lambda_quotient(inp) == expected, (a, b, n)


@given(
    a=st.integers(min_value=-200, max_value=200),
    b=st.integers(min_value=-200, max_value=200),
    k=st.integers(min_value=1, max_value=12),
)
@settings(max_examples=300)
def test_forms_agree_with_oracle(a, b, k):
    n = 2 * k + 1
    inp = LambdaInput(a, b, n)
    expected = oracle(a, b, n)
    assert lambda_sum(inp) == expected
    assert lambda_quotient(inp) == expected


def test_check_mode_matches_plain():
    inp = LambdaInput(7, -4, 9)
    assert evaluate(inp, check=True) == evaluate(inp)


@pytest.mark.parametrize("n", [4, 2, 0, -3, 1, -1, 2**32 + 1, True])
def test_bad_exponents_rejected(n):
    with pytest.raises(ValueError):
        check_odd_exponent(n)
    with pytest.raises(ValueError):
        LambdaInput(1, 1, n)


def test_exponent_accepts_odd_in_range():
    assert check_odd_exponent(3) == 3
    assert check_odd_exponent(2**32 - 1) == 2**32 - 1


def test_input_is_immutable():
    inp = LambdaInput(1, 2, 3)
    with pytest.raises(dataclasses.FrozenInstanceError):
        inp.a = 5


def test_size_guard_rejects_oversized():
    inp = LambdaInput(2**100, 3, 9)
    with pytest.raises(ResourceLimitError):
        lambda_sum(inp, max_bits=128)
    with pytest.raises(ResourceLimitError):
        lambda_quotient(inp, max_bits=128)
    with pytest.raises(ResourceLimitError):
        evaluate(inp, max_bits=128)


def test_size_guard_admits_reasonable():
    inp = LambdaInput(2**100, 3, 9)
    assert evaluate(inp, max_bits=4096) == oracle(2**100, 3, 9)
