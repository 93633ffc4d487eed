"""Rational ground truth: exact ops, long-division digits, period detection."""

from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

from rdec.errors import DivisionByZero
from rdec.oracle import (
    PERIOD_DENOMINATOR_CAP,
    PeriodicExpansion,
    digit_stream,
    expansion_period,
    rat_add,
    rat_compare,
    rat_inv,
    rat_mul,
    rat_neg,
    rational_digit,
)
from rdec.scaled import pow10

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=200)


class TestRationalOps:
    def test_exact_cancellation(self):
        assert rat_add(Fraction(1, 3), Fraction(2, 3)) == 1

    def test_example_one_operands(self):
        assert rat_add(Fraction(7, 9), Fraction(23, 99)) == Fraction(100, 99)

    def test_inverse_of_sum(self):
        assert rat_inv(Fraction(100, 99)) == Fraction(99, 100)

    def test_inverse_of_zero(self):
        with pytest.raises(DivisionByZero):
            rat_inv(Fraction(0))

    def test_mul_neg(self):
        assert rat_mul(Fraction(3, 4), Fraction(-2, 3)) == Fraction(-1, 2)
        assert rat_neg(Fraction(-5, 7)) == Fraction(5, 7)

    def test_compare(self):
        assert rat_compare(Fraction(99, 100), Fraction(1)) == -1
        assert rat_compare(Fraction(2, 2), Fraction(1)) == 0
        # the 8-digit truncation of sqrt(2), squared, still undershoots 2
        assert rat_compare(Fraction(141421356**2, 10**16), Fraction(2)) == -1


class TestDigits:
    def test_example_one_result(self):
        r = Fraction(100, 99)
        assert rational_digit(r, 0) == 1
        assert [rational_digit(r, k) for k in range(1, 7)] == [0, 1, 0, 1, 0, 1]

    def test_terminating_gets_zero_tail(self):
        r = Fraction(1, 2)
        assert rational_digit(r, 0) == 0
        assert rational_digit(r, 1) == 5
        assert all(rational_digit(r, k) == 0 for k in range(2, 20))

    def test_negative_complement_form(self):
        r = Fraction(-13, 5)
        assert rational_digit(r, 0) == -3
        assert rational_digit(r, 1) == 4

    def test_digit_stream_agrees(self):
        r = Fraction(-355, 113)
        stream = list(islice(digit_stream(r), 40))
        assert stream[0] == rational_digit(r, 0)
        assert stream[1:] == [rational_digit(r, k) for k in range(1, 40)]

    @given(rationals, st.integers(0, 60))
    def test_digit_value_coherence(self, r, k):
        mant = rational_digit(r, 0)
        for j in range(1, k + 1):
            mant = mant * 10 + rational_digit(r, j)
        truncation = Fraction(mant, pow10(k))
        assert truncation <= r < truncation + Fraction(1, pow10(k))

    @given(rationals)
    def test_no_nine_tail(self, r):
        # any window as long as the denominator contains a digit below 9
        q = r.denominator
        for start in (1, q + 1, 3 * q + 1):
            window = [rational_digit(r, k) for k in range(start, start + q)]
            assert any(d < 9 for d in window)


class TestPeriods:
    def test_pure_period(self):
        out = expansion_period(Fraction(23, 99))
        assert out == PeriodicExpansion(0, (), (2, 3))
        assert str(out) == "0.(23)"

    def test_terminating(self):
        out = expansion_period(Fraction(1, 4))
        assert out == PeriodicExpansion(0, (2, 5), ())
        assert str(out) == "0.25"

    def test_mixed(self):
        out = expansion_period(Fraction(1, 6))
        assert out == PeriodicExpansion(0, (1,), (6,))
        assert str(out) == "0.1(6)"

    def test_negative_complement(self):
        out = expansion_period(Fraction(-13, 5))
        assert out == PeriodicExpansion(-3, (4,), ())
        assert str(out) == "(-3).4"

    def test_denominator_cap(self):
        with pytest.raises(ValueError):
            expansion_period(Fraction(1, PERIOD_DENOMINATOR_CAP * 10 + 1))

    @given(rationals)
    @settings(max_examples=150)
    def test_period_round_trip(self, r):
        out = expansion_period(r)
        assert out.to_rational() == r
        horizon = len(out.preperiod) + 3 * max(len(out.period), 1)
        for k in range(horizon + 1):
            assert out.digit(k) == rational_digit(r, k)

    @given(rationals)
    def test_period_never_all_nines(self, r):
        period = expansion_period(r).period
        assert period != (9,) * len(period) or not period


class TestSelfConsistency:
    @given(rationals, rationals)
    @settings(max_examples=100)
    def test_sum_digits_recompute(self, r, s):
        total = rat_add(r, s)
        recomputed = Fraction(total.numerator, total.denominator)
        for k in range(0, 30):
            assert rational_digit(total, k) == rational_digit(recomputed, k)
