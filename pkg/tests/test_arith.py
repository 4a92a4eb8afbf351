from fractions import Fraction
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from app.core.exceptions import (
    CapacityException,
    DomainException,
    ValidationException,
    ZeroDenominatorException,
)
from app.services.arith_service import (
    factorize,
    format_rational,
    make_rational,
    parse_rational,
    rational_op,
)


def smallest_prime_factors(limit: int) -> list:
    """Menor fator primo de cada inteiro em [0, limit]"""
    spf = np.arange(limit + 1)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            multiples = np.arange(p * p, limit + 1, p)
            multiples = multiples[spf[multiples] == multiples]
            spf[multiples] = p
    return spf.tolist()


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
nonzero_rationals = rationals.filter(lambda x: x != 0)


class TestMakeRational:
    def test_reduces(self):
        assert make_rational(2, 4) == Fraction(1, 2)

    def test_canonical_zero(self):
        zero = make_rational(0, 5)
        assert (zero.numerator, zero.denominator) == (0, 1)

    def test_sign_on_numerator(self):
        value = make_rational(3, -6)
        assert (value.numerator, value.denominator) == (-1, 2)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominatorException) as exc:
            make_rational(1, 0)
        assert exc.value.error_code == "ZERO_DENOMINATOR"


class TestRationalOp:
    def test_addition(self):
        assert rational_op(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)

    def test_absorbing_zero(self):
        assert rational_op(Fraction(2, 3), Fraction(0), "×") == 0

    def test_division_by_zero(self):
        with pytest.raises(ZeroDenominatorException):
            rational_op(Fraction(1), Fraction(0), "÷")

    def test_unknown_operator(self):
        with pytest.raises(DomainException):
            rational_op(Fraction(1), Fraction(1), "^")

    @given(rationals, rationals, rationals)
    def test_distributive(self, a, b, c):
        left = rational_op(a, rational_op(b, c, "+"), "*")
        right = rational_op(rational_op(a, b, "*"), rational_op(a, c, "*"), "+")
        assert left == right

    @given(nonzero_rationals)
    def test_multiplicative_inverse(self, a):
        assert rational_op(a, rational_op(Fraction(1), a, "/"), "*") == 1

    @given(rationals, rationals)
    def test_subtraction_inverts_addition(self, a, b):
        assert rational_op(rational_op(a, b, "+"), b, "−") == a


class TestTextForm:
    @pytest.mark.parametrize("text,expected", [
        ("42", Fraction(42)),
        ("-3/7", Fraction(-3, 7)),
        ("−1/2", Fraction(-1, 2)),
        ("  6/4 ", Fraction(3, 2)),
    ])
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "1/", "a", "1.5", "--1"])
    def test_parse_malformed(self, text):
        with pytest.raises(ValidationException):
            parse_rational(text)

    def test_parse_zero_denominator(self):
        with pytest.raises(ZeroDenominatorException):
            parse_rational("1/0")

    @given(rationals)
    def test_format_is_parsed_back(self, x):
        assert parse_rational(format_rational(x)) == x

    def test_format_integer(self):
        assert format_rational(Fraction(-8, 2)) == "-4"


class TestFactorize:
    def test_composite(self):
        assert factorize(12).as_dict() == {2: 2, 3: 1}

    def test_one(self):
        assert factorize(1).factors == ()

    def test_prime(self):
        assert factorize(97).as_dict() == {97: 1}

    def test_large_prime_cofactor_inside_bound(self):
        assert factorize(2 * 1000003, bound=10**7).as_dict() == {2: 1, 1000003: 1}

    def test_cofactor_beyond_bound(self):
        with pytest.raises(CapacityException) as exc:
            factorize(1000003 * 1000033, bound=10**4)
        assert exc.value.details["limit"] == 10**4

    @pytest.mark.parametrize("n", [0, -5])
    def test_nonpositive(self, n):
        with pytest.raises(DomainException):
            factorize(n)

    @given(st.integers(min_value=1, max_value=10**6))
    def test_recomposes(self, n):
        result = factorize(n)
        assert result.value() == n
        assert list(result.primes) == sorted(result.primes)
        for p in result.primes:
            assert all(p % d for d in range(2, int(p ** 0.5) + 1))

    @pytest.mark.slow
    def test_exhaustive_against_sieve(self):
        limit = 10**6
        spf = smallest_prime_factors(limit)
        for n in range(1, limit + 1):
            expected = {}
            m = n
            while m > 1:
                expected[spf[m]] = expected.get(spf[m], 0) + 1
                m //= spf[m]
            assert factorize(n).as_dict() == expected, n
