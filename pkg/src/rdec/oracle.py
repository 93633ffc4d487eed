"""Exact rational arithmetic and long-division decimal expansion.

This is the independent ground truth the digit-stream machinery is checked
against.  Rationals are stdlib :class:`fractions.Fraction` values (always
reduced, positive denominator).  Expansions are complement-form: the
integer part is the floor, every later digit is in 0..9, and terminating
values get a 0-tail, never a 9-tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DivisionByZero
from .scaled import pow10

Rational = Fraction

PERIOD_DENOMINATOR_CAP = 10**7


def rat_add(r: Rational, s: Rational) -> Rational:
    return r + s


def rat_mul(r: Rational, s: Rational) -> Rational:
    return r * s


def rat_neg(r: Rational) -> Rational:
    return -r


def rat_inv(r: Rational) -> Rational:
    if r == 0:
        raise DivisionByZero("reciprocal of zero")
    return 1 / r


def rat_compare(r: Rational, s: Rational) -> int:
    """Trichotomy by cross multiplication: -1, 0 or +1."""
    return (r > s) - (r < s)


def rational_digit(r: Rational, k: int) -> int:
    """The k-th complement-form digit of r.

    k = 0 returns the integer part (the floor, any integer); k >= 1
    returns the fractional digit, always in 0..9.  Terminating rationals
    continue with zeros.
    """
    if k < 0:
        raise ValueError("digit position must be non-negative")
    if k == 0:
        return r.numerator // r.denominator
    return (r.numerator * pow10(k) // r.denominator) % 10


def digit_stream(r: Rational) -> Iterator[int]:
    """Incremental long division: yields a0, then a1, a2, ... forever."""
    p, q = r.numerator, r.denominator
    a0 = p // q
    yield a0
    rem = p - a0 * q
    while True:
        rem *= 10
        yield rem // q
        rem %= q


@dataclass(frozen=True)
class PeriodicExpansion:
    """Eventually periodic expansion a0 . preperiod (period repeating)."""

    integer_part: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit(self, k: int) -> int:
        """Digit at position k (k = 0 is the integer part)."""
        if k == 0:
            return self.integer_part
        i = k - 1
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            return 0
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def to_rational(self) -> Rational:
        """Exact value of the expansion."""
        pre_len = len(self.preperiod)
        pre = 0
        for d in self.preperiod:
            pre = pre * 10 + d
        value = Fraction(self.integer_part) + Fraction(pre, pow10(pre_len))
        if self.period:
            per = 0
            for d in self.period:
                per = per * 10 + d
            value += Fraction(per, (pow10(len(self.period)) - 1) * pow10(pre_len))
        return value

    def __str__(self) -> str:
        head = f"({self.integer_part})" if self.integer_part < 0 else str(self.integer_part)
        body = "".join(map(str, self.preperiod))
        if self.period:
            body += "(" + "".join(map(str, self.period)) + ")"
        return head + "." + body if body else head


def expansion_period(r: Rational) -> PeriodicExpansion:
    """Minimal preperiod and period via remainder-cycle detection.

    Denominators above PERIOD_DENOMINATOR_CAP are refused: the period can
    be as long as the denominator, and the rendering is cosmetic.
    rational_digit has no such cap.
    """
    if r.denominator > PERIOD_DENOMINATOR_CAP:
        raise ValueError(
            f"denominator {r.denominator} exceeds period-detection cap")
    p, q = r.numerator, r.denominator
    a0 = p // q
    rem = p - a0 * q
    seen: dict[int, int] = {}
    digits: list[int] = []
    while rem != 0 and rem not in seen:
        seen[rem] = len(digits)
        rem *= 10
        digits.append(rem // q)
        rem %= q
    if rem == 0:
        return PeriodicExpansion(a0, tuple(digits), ())
    start = seen[rem]
    return PeriodicExpansion(a0, tuple(digits[:start]), tuple(digits[start:]))
