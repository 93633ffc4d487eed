"""Shared generators and digit-comparison helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from rdec import RealDecimal, rational_digit
from rdec.product import sqrt
from rdec.stream import neg


def random_rational(rng: random.Random, max_abs: int = 10**6,
                    nonzero: bool = False) -> Fraction:
    """Uniformly messy reduced rational with |p|, q <= max_abs."""
    while True:
        p = rng.randint(-max_abs, max_abs)
        q = rng.randint(1, max_abs)
        if nonzero and p == 0:
            continue
        return Fraction(p, q)


def random_sqrt_value(rng: random.Random, max_abs: int = 500) -> RealDecimal:
    """A signed square root of a random non-negative rational."""
    radicand = Fraction(rng.randint(0, max_abs), rng.randint(1, max_abs))
    value = sqrt(radicand)
    return neg(value) if rng.random() < 0.5 else value


def random_witnessed(rng: random.Random) -> RealDecimal:
    """Mixed population: exact rationals and square-root values."""
    if rng.random() < 0.5:
        return RealDecimal.from_rational(random_rational(rng))
    return random_sqrt_value(rng)


def stream_digits(x: RealDecimal, n: int) -> tuple[int, list[int]]:
    """Integer part plus the first n emitted digits."""
    return x.integer_part, x.digits(n)


def oracle_digits(r: Fraction, n: int) -> tuple[int, list[int]]:
    """Ground-truth expansion of a rational via long division."""
    return rational_digit(r, 0), [rational_digit(r, k) for k in range(1, n + 1)]


def assert_matches_oracle(x: RealDecimal, r: Fraction, n: int):
    assert stream_digits(x, n) == oracle_digits(r, n), (
        f"digit stream diverges from the exact expansion of {r}")
