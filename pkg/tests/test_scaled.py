"""Terminating-decimal substrate: exact ops, floor truncation, rendering."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rdec.scaled import (
    IntervalBound,
    ScaledDecimal,
    format_prefix,
    parse_complement,
    pow10,
    scaled_add,
    scaled_compare,
    scaled_digit,
    scaled_format,
    scaled_mul,
    scaled_neg,
    scaled_truncate,
)


def sd(mantissa, scale=0):
    return ScaledDecimal(mantissa, scale)


def scaled_decimals(max_mantissa=10**12, max_scale=9):
    return st.builds(ScaledDecimal,
                     st.integers(-max_mantissa, max_mantissa),
                     st.integers(0, max_scale))


class TestArithmetic:
    def test_add_intro_example(self):
        # (-4).88 + 5.6 = 2.48
        assert scaled_add(sd(-312, 2), sd(56, 1)) == sd(248, 2)

    def test_add_identity(self):
        a = sd(1414, 3)
        assert scaled_add(a, sd(0)) == a

    def test_add_derived(self):
        assert scaled_add(sd(1414, 3), sd(1, 3)) == sd(1415, 3)

    def test_add_scale_is_max(self):
        out = scaled_add(sd(12, 1), sd(34, 3))
        assert out.scale == 3 and out.mantissa == 1234

    def test_mul_intro_example(self):
        assert scaled_mul(sd(12, 1), sd(26, 1)) == sd(312, 2)

    def test_mul_sqrt_walk(self):
        assert scaled_mul(sd(14, 1), sd(14, 1)) == sd(196, 2)

    def test_mul_identity(self):
        a = sd(-77, 2)
        assert scaled_mul(a, sd(1)) == a

    def test_neg(self):
        assert scaled_neg(sd(312, 2)) == sd(-312, 2)
        assert scaled_neg(sd(0)) == sd(0)
        assert scaled_neg(sd(-26, 1)) == sd(26, 1)

    def test_compare(self):
        assert scaled_compare(sd(196, 2), sd(2)) == -1
        assert scaled_compare(sd(248, 2), sd(248, 2)) == 0
        square = scaled_mul(sd(1415, 3), sd(1415, 3))
        assert scaled_compare(square, sd(2)) == 1


class TestTruncationAndDigits:
    def test_truncate_examples(self):
        assert scaled_truncate(sd(196, 2), 0) == sd(1)
        assert scaled_truncate(sd(10100, 4), 3) == sd(1010, 3)

    def test_truncate_negative_floors(self):
        # (-3.12) floored to one digit is -3.2, complement form (-4).8
        out = scaled_truncate(sd(-312, 2), 1)
        assert out == sd(-32, 1)
        assert scaled_format(out) == "(-4).8"

    def test_digit_examples(self):
        assert scaled_digit(sd(196, 2), 1) == 9
        assert scaled_digit(sd(10100, 4), 2) == 1
        for k in range(1, 6):
            assert scaled_digit(sd(0), k) == 0

    @given(scaled_decimals(), st.integers(1, 14))
    def test_floor_digit_coherence(self, a, k):
        digit = scaled_digit(a, k)
        assert 0 <= digit <= 9
        step = scaled_add(scaled_truncate(a, k - 1), sd(digit, k))
        assert scaled_truncate(a, k) == step

    @given(scaled_decimals(), st.integers(0, 14))
    def test_truncation_monotonicity(self, a, k):
        low = scaled_truncate(a, k)
        assert low <= a < scaled_add(low, sd(1, k))


class TestExactness:
    def test_against_rational_arithmetic(self):
        rng = random.Random(20260810)
        for _ in range(10_000):
            a = sd(rng.randint(-10**9, 10**9), rng.randint(0, 8))
            b = sd(rng.randint(-10**9, 10**9), rng.randint(0, 8))
            assert scaled_add(a, b).as_fraction() == a.as_fraction() + b.as_fraction()
            assert scaled_mul(a, b).as_fraction() == a.as_fraction() * b.as_fraction()
            assert scaled_neg(a).as_fraction() == -a.as_fraction()

    def test_value_equality_ignores_representation(self):
        assert sd(5, 1) == sd(5000, 4)
        assert sd(5, 1) != sd(51, 2)

    def test_from_fraction(self):
        assert ScaledDecimal.from_fraction(Fraction(1, 8)) == sd(125, 3)
        with pytest.raises(ValueError):
            ScaledDecimal.from_fraction(Fraction(1, 3))


class TestRendering:
    def test_complement_negative(self):
        assert format_prefix(-4, [8, 8]) == "(-4).88"

    def test_signed_negative(self):
        assert format_prefix(-4, [8, 8], mode="signed") == "-3.12"

    def test_zero_both_modes(self):
        assert format_prefix(0, [0, 0, 0]) == "0.000"
        assert format_prefix(0, [0, 0, 0], mode="signed") == "0.000"

    def test_signed_small_magnitude(self):
        # (-1).5 is -0.5
        assert format_prefix(-1, [5], mode="signed") == "-0.5"

    def test_digit_count_prefix(self):
        assert format_prefix(2, [4, 8, 0], n=2) == "2.48"
        assert format_prefix(2, [4, 8], n=0) == "2"

    @given(scaled_decimals())
    def test_display_round_trip(self, a):
        assert parse_complement(scaled_format(a)) == a


class TestIntervalBound:
    def test_width_and_membership(self):
        box = IntervalBound(sd(14, 1), 1)
        assert box.upper() == sd(15, 1)
        assert box.contains(Fraction(141, 100))
        assert not box.contains(Fraction(15, 10))
        assert box.contains(Fraction(14, 10))

    def test_pow10_guard(self):
        with pytest.raises(ValueError):
            pow10(-1)
