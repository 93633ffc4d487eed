"""Multiplication, reciprocal, division and square root on lazy decimals.

Multiplication of non-negative values scans the digits of truncation
products at a fixed scale offset s chosen so that x + y <= 10**s; the
offset bounds carry propagation, so a non-9 digit at the scan point pins
the product prefix one place short of it.  Signs route through negation.

Reciprocals and square roots emit digits under exact bracket invariants:
each emitted prefix y_k of 1/x satisfies x*y_k <= 1 < x*(y_k + 10**-k),
and each prefix r_k of sqrt(c) satisfies r_k**2 <= c < (r_k + 10**-k)**2.
Comparisons are exact through witnesses; without a witness they are
certified from truncation enclosures, which stalls (and burns fuel) only
at exact boundaries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count
from math import isqrt
from typing import Iterator

from .errors import DivisionByZero, FuelExhausted, NegativeRadicand
from .scaled import pow10
from .stream import (
    DEFAULT_FUEL,
    RealDecimal,
    RationalWitness,
    SignClass,
    SqrtWitness,
    _Cell,
    _fix_prefix,
    _is_terminating,
    _require_fuel,
    _spawn,
    neg,
    sign,
    sqrt_witness,
    witness_inv,
    witness_mul,
    witness_value,
)


def choose_scale(x: RealDecimal, y: RealDecimal) -> int:
    """Smallest s >= 0 with a0 + b0 + 2 <= 10**s, which forces x + y <= 10**s.

    Integer parts alone decide s; any valid larger choice yields the same
    product.
    """
    a0, b0 = x.integer_part, y.integer_part
    if a0 < 0 or b0 < 0:
        raise ValueError("scale selection requires non-negative operands")
    need = a0 + b0 + 2
    s = 0
    while pow10(s) < need:
        s += 1
    return s


def _product_engine(x: RealDecimal, y: RealDecimal, s: int,
                    exact: Fraction | None, budget: int,
                    cell: _Cell) -> Iterator[int]:
    X = x.truncate(s).mantissa   # x_{k+s} mantissa, currently k = 0
    Y = y.truncate(s).mantissa
    Xm, Ym = X, Y
    m = 0
    emitted = -1
    prefix = 0
    idle = 0
    k = 0
    while True:
        k += 1
        X = X * 10 + x.digit(k + s)
        Y = Y * 10 + y.digit(k + s)
        product = X * Y              # x_{k+s} * y_{k+s} at scale 2(k+s)
        if product // pow10(k + 2 * s) % 10 != 9:
            target = product // pow10(k + 2 * s + 1)  # floored to k-1 places
            for item in _fix_prefix(prefix, emitted, target, k - 1):
                yield item
            prefix, emitted = target, k - 1
            m, Xm, Ym = k, X, Y
            idle = 0
        else:
            if k == m + 1 and exact is not None:
                # Candidate: scan digits stay 9 forever past m, making the
                # product the terminating value (x_{m+s}*y_{m+s})_m + 10**-m.
                candidate = Xm * Ym // pow10(m + 2 * s) + 1
                if Fraction(candidate, pow10(m)) == exact:
                    cell.value = m
                    for item in _fix_prefix(prefix, emitted, candidate, m):
                        yield item
                    while True:
                        yield 0
            idle += 1
            if idle >= budget:
                raise FuelExhausted(
                    f"no certified product digit after scanning {idle} "
                    f"positions (scan digits stuck at 9 up to position {k})",
                    budget=budget, position=k)


def _mul_nonneg(x: RealDecimal, y: RealDecimal, fuel: int) -> RealDecimal:
    budget = _require_fuel(fuel)
    witness = witness_mul(x.witness, y.witness)
    s = choose_scale(x, y)
    cell = _Cell()
    engine = _product_engine(x, y, s, witness_value(witness), budget, cell)
    return _spawn(engine, witness, cell)


def mul(x: RealDecimal, y: RealDecimal, fuel: int = DEFAULT_FUEL) -> RealDecimal:
    """Product; negative operands (integer part < 0) route through negation."""
    if x.integer_part < 0 and y.integer_part < 0:
        return _mul_nonneg(neg(x), neg(y), fuel)
    if y.integer_part < 0:
        return neg(_mul_nonneg(x, neg(y), fuel))
    if x.integer_part < 0:
        return neg(_mul_nonneg(neg(x), y, fuel))
    return _mul_nonneg(x, y, fuel)


class _UnitComparator:
    """Certified decisions of x*t <= 1 versus x*t > 1 for terminating t >= 0.

    With a witness the decision is exact (square roots compare squares).
    Without one, x is squeezed between truncation bounds that are refined
    until one side certifies; refinement counts against the fuel budget
    via ``charge``, reset by the caller whenever a digit is emitted.
    """

    def __init__(self, x: RealDecimal, budget: int):
        self.x = x
        self.budget = budget
        self.idle = 0
        self.depth = 0
        witness = x.witness
        if isinstance(witness, RationalWitness):
            self.mode = "rational"
            self.p = witness.value.numerator
            self.q = witness.value.denominator
        elif isinstance(witness, SqrtWitness):
            if witness.sign < 0:
                raise ValueError("comparator requires a positive value")
            self.mode = "sqrt"
            self.p = witness.radicand.numerator
            self.q = witness.radicand.denominator
        else:
            self.mode = "interval"

    def reset(self):
        self.idle = 0

    def le_one(self, mantissa: int, scale: int) -> bool:
        """True iff x * (mantissa/10**scale) <= 1, certified."""
        if self.mode == "rational":
            return self.p * mantissa <= self.q * pow10(scale)
        if self.mode == "sqrt":
            return self.p * mantissa * mantissa <= self.q * pow10(2 * scale)
        while True:
            low = self.x.truncate(self.depth).mantissa
            bound = pow10(self.depth + scale)
            if (low + 1) * mantissa <= bound:
                return True
            if low * mantissa > bound:
                return False
            self.depth += 1
            self.idle += 1
            if self.idle >= self.budget:
                raise FuelExhausted(
                    "interval certification stalled comparing against an "
                    "exact boundary (x * t = 1 cannot be decided without "
                    "a witness)", budget=self.budget, position=self.depth)


def _integer_reciprocal(dec: _UnitComparator) -> int:
    """Largest b0 with x*b0 <= 1 (so x*(b0+1) > 1), by doubling then bisection."""
    if not dec.le_one(1, 0):
        return 0
    hi = 2
    while dec.le_one(hi, 0):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if dec.le_one(mid, 0):
            lo = mid
        else:
            hi = mid
    return lo


def _recip_engine(x: RealDecimal, budget: int) -> Iterator[int]:
    dec = _UnitComparator(x, budget)
    head = _integer_reciprocal(dec)
    dec.reset()
    yield head
    mantissa = head
    for k in count(1):
        base = mantissa * 10
        digit = 9
        while digit > 0 and not dec.le_one(base + digit, k):
            digit -= 1
        # digit == 0 inherits x*y_{k-1} <= 1 from the previous step; the
        # upper bracket x*(y_k + 10**-k) > 1 was certified while scanning.
        mantissa = base + digit
        dec.reset()
        yield digit


def recip(x: RealDecimal, fuel: int = DEFAULT_FUEL) -> RealDecimal:
    """Reciprocal by bracket-certified digit search.

    Every emitted prefix y_k satisfies x*y_k <= 1 < x*(y_k + 10**-k).
    Raises DivisionByZero when a witness proves x = 0, FuelExhausted when
    zero cannot be excluded or a witness-less comparison hits an exact
    boundary.
    """
    budget = _require_fuel(fuel)
    cls = sign(x, budget)
    if cls is SignClass.ZERO:
        raise DivisionByZero("reciprocal of zero")
    if cls is SignClass.NEGATIVE:
        return neg(recip(neg(x), budget))
    witness = witness_inv(x.witness)
    engine = _recip_engine(x, budget)
    return _spawn(engine, witness, _Cell())


def div(x: RealDecimal, y: RealDecimal, fuel: int = DEFAULT_FUEL) -> RealDecimal:
    """Quotient x * (1/y)."""
    return mul(x, recip(y, fuel), fuel)


def _sqrt_engine(p: int, q: int, head: int) -> Iterator[int]:
    mantissa = head
    scaled = p
    while True:
        scaled *= 100
        base = mantissa * 10
        digit = 9
        while digit > 0 and (base + digit) ** 2 * q > scaled:
            digit -= 1
        mantissa = base + digit
        yield digit


def sqrt(radicand) -> RealDecimal:
    """Square root of a non-negative rational, digit by digit.

    Each prefix r_k is the largest k-digit decimal with r_k**2 <= c, so
    non-square radicands maintain the strict bracket
    r_k**2 < c < (r_k + 10**-k)**2.  Squares of terminating decimals short
    circuit to the exact terminating value (the strict bracket has no
    solution there).
    """
    radicand = Fraction(radicand)
    if radicand < 0:
        raise NegativeRadicand(f"square root of negative value {radicand}")
    p, q = radicand.numerator, radicand.denominator
    witness = sqrt_witness(radicand, 1)
    value = witness_value(witness)
    if value is not None and _is_terminating(value):
        return RealDecimal.from_rational(value)
    head = isqrt(p // q)
    engine = _sqrt_engine(p, q, head)
    return RealDecimal(head, lambda k: next(engine), witness)
