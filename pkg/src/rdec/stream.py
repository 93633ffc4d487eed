"""Lazy infinite decimals with certified digit emission.

A :class:`RealDecimal` is an integer part plus a memoized stream of
fractional digits, each in 0..9, in complement form: the value is
``integer_part + sum(digit(k) * 10**-k)``.  Construction contract: the
digit stream must be canonical, that is, infinitely many digits below 9.
Witness-backed values (exact rational, or square root of a rational)
additionally promise that the stream equals the canonical expansion of
the witnessed value; that promise is what makes carry stalls decidable.

Addition scans digit sums.  Every position whose digit sum differs from 9
pins the result prefix one place short of the scan point; a run of
nine-sums stalls the scan, and the stall is resolved only when an exact
witness confirms that the run continues forever (the result is then a
terminating decimal).  Without a witness the stall burns fuel and raises
:class:`FuelExhausted` rather than guess: no emitted digit is ever
retracted.
"""

from __future__ import annotations

import operator
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterator

from .errors import DivisionByZero, FuelExhausted, NonCanonicalInput, RdecError
from .oracle import digit_stream
from .scaled import IntervalBound, ScaledDecimal, format_prefix, pow10

DEFAULT_FUEL = 10_000


class SignClass(Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


def _require_fuel(fuel: int) -> int:
    fuel = operator.index(fuel)
    if fuel < 1:
        raise ValueError("fuel budget must be >= 1")
    return fuel


# ---------------------------------------------------------------------------
# Witnesses: exact symbolic backing that makes stall resolution decidable.
# ---------------------------------------------------------------------------

class Witness:
    """Marker base for exact backings; absence of a witness is None."""

    __slots__ = ()


@dataclass(frozen=True)
class RationalWitness(Witness):
    value: Fraction


@dataclass(frozen=True)
class SqrtWitness(Witness):
    """The value sign * sqrt(radicand), radicand a non-square rational > 0."""

    radicand: Fraction
    sign: int = 1


def sqrt_witness(radicand: Fraction, sign: int = 1) -> Witness:
    """Build a square-root witness, collapsing perfect squares to rationals."""
    radicand = Fraction(radicand)
    if radicand < 0:
        raise ValueError("radicand must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    rp = isqrt(radicand.numerator)
    rq = isqrt(radicand.denominator)
    if rp * rp == radicand.numerator and rq * rq == radicand.denominator:
        return RationalWitness(Fraction(sign * rp, rq))
    return SqrtWitness(radicand, sign)


def witness_add(a: Witness | None, b: Witness | None) -> Witness | None:
    """Exact sum of two witnesses, or None when outside the closure.

    Rationals are closed; equal-radicand square roots combine (their sum is
    2*sqrt(c) or exactly zero).  Everything else loses exactness.
    """
    if isinstance(a, RationalWitness) and isinstance(b, RationalWitness):
        return RationalWitness(a.value + b.value)
    if (isinstance(a, SqrtWitness) and isinstance(b, SqrtWitness)
            and a.radicand == b.radicand):
        if a.sign == b.sign:
            return sqrt_witness(4 * a.radicand, a.sign)
        return RationalWitness(Fraction(0))
    return None


def witness_mul(a: Witness | None, b: Witness | None) -> Witness | None:
    """Exact product of two witnesses, or None."""
    if isinstance(a, RationalWitness) and isinstance(b, RationalWitness):
        return RationalWitness(a.value * b.value)
    if isinstance(a, RationalWitness) and isinstance(b, SqrtWitness):
        a, b = b, a
    if isinstance(a, SqrtWitness) and isinstance(b, RationalWitness):
        if b.value == 0:
            return RationalWitness(Fraction(0))
        sign = a.sign if b.value > 0 else -a.sign
        return sqrt_witness(a.radicand * b.value * b.value, sign)
    if isinstance(a, SqrtWitness) and isinstance(b, SqrtWitness):
        return sqrt_witness(a.radicand * b.radicand, a.sign * b.sign)
    return None


def witness_neg(w: Witness | None) -> Witness | None:
    if isinstance(w, RationalWitness):
        return RationalWitness(-w.value)
    if isinstance(w, SqrtWitness):
        return SqrtWitness(w.radicand, -w.sign)
    return None


def witness_inv(w: Witness | None) -> Witness | None:
    if isinstance(w, RationalWitness):
        if w.value == 0:
            raise DivisionByZero("reciprocal of an exact zero")
        return RationalWitness(1 / w.value)
    if isinstance(w, SqrtWitness):
        return sqrt_witness(1 / w.radicand, w.sign)
    return None


def witness_value(w: Witness | None) -> Fraction | None:
    """The exact rational value, when the witness provides one."""
    return w.value if isinstance(w, RationalWitness) else None


def _is_terminating(r: Fraction) -> bool:
    q = r.denominator
    while q % 2 == 0:
        q //= 2
    while q % 5 == 0:
        q //= 5
    return q == 1


class _Cell:
    """Mutable slot the scan engines report stall resolutions through."""

    __slots__ = ("value",)

    def __init__(self):
        self.value: int | None = None


# ---------------------------------------------------------------------------
# RealDecimal
# ---------------------------------------------------------------------------

class RealDecimal:
    """Lazily evaluated infinite decimal with memoized digits.

    ``digit_source`` is called once per position, in increasing order,
    under an internal lock; implementations may keep incremental state.
    Values are logically immutable and safe to share across threads.
    There is no equality or ordering: equality of infinite decimals is
    undecidable, use ``separate`` to certify apartness instead.
    """

    def __init__(self, integer_part: int, digit_source: Callable[[int], int],
                 witness: Witness | None = None):
        self.integer_part = operator.index(integer_part)
        self.witness = witness
        self._source = digit_source
        self._digits: list[int] = []
        self._trunc = (0, self.integer_part)  # (depth, prefix mantissa)
        self._failure: RdecError | None = None
        self._lock = threading.Lock()
        self._stall_cell = _Cell()

    @classmethod
    def from_rational(cls, value) -> "RealDecimal":
        """Canonical expansion of an exact rational, witness attached."""
        value = Fraction(value)
        stream = digit_stream(value)
        head = next(stream)
        return cls(head, lambda k: next(stream), RationalWitness(value))

    @classmethod
    def from_int(cls, value: int) -> "RealDecimal":
        return cls.from_rational(Fraction(value))

    @property
    def stall_resolved_at(self) -> int | None:
        """Scan position at which a carry stall was proven permanent."""
        return self._stall_cell.value

    def digit(self, k: int) -> int:
        """The k-th fractional digit (k >= 1), produced on demand."""
        if k < 1:
            raise ValueError("digit positions start at 1")
        cache = self._digits
        if k <= len(cache):
            return cache[k - 1]
        with self._lock:
            while len(cache) < k:
                if self._failure is not None:
                    raise self._failure
                position = len(cache) + 1
                try:
                    raw = self._source(position)
                    value = operator.index(raw)
                except RdecError as exc:
                    self._failure = exc
                    raise
                except StopIteration:
                    exc = NonCanonicalInput(
                        f"digit source ended at position {position}",
                        position=position)
                    self._failure = exc
                    raise exc
                except TypeError:
                    exc = NonCanonicalInput(
                        f"digit source returned a non-integer at position {position}",
                        position=position)
                    self._failure = exc
                    raise exc
                if not 0 <= value <= 9:
                    exc = NonCanonicalInput(
                        f"digit {value} out of range at position {position}",
                        position=position)
                    self._failure = exc
                    raise exc
                cache.append(value)
        return cache[k - 1]

    def digits(self, n: int) -> list[int]:
        """The first n fractional digits."""
        return [self.digit(k) for k in range(1, n + 1)]

    def truncate(self, k: int) -> ScaledDecimal:
        """The exact truncation a0.a1...ak; satisfies x_k <= x < x_k + 10**-k."""
        if k < 0:
            raise ValueError("truncation depth must be non-negative")
        if k == 0:
            return ScaledDecimal(self.integer_part, 0)
        self.digit(k)
        with self._lock:
            depth, mant = self._trunc
            if k >= depth:
                for j in range(depth, k):
                    mant = mant * 10 + self._digits[j]
                self._trunc = (k, mant)
                return ScaledDecimal(mant, k)
        mant = self.integer_part
        for j in range(k):
            mant = mant * 10 + self._digits[j]
        return ScaledDecimal(mant, k)

    def bounds(self, n: int) -> IntervalBound:
        """Enclosure [x_n, x_n + 10**-n) from the n-digit truncation."""
        return IntervalBound(self.truncate(n), n)

    def __neg__(self) -> "RealDecimal":
        return neg(self)

    def __add__(self, other) -> "RealDecimal":
        if not isinstance(other, RealDecimal):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other) -> "RealDecimal":
        if not isinstance(other, RealDecimal):
            return NotImplemented
        return sub(self, other)

    def __mul__(self, other) -> "RealDecimal":
        if not isinstance(other, RealDecimal):
            return NotImplemented
        from .product import mul
        return mul(self, other)

    def __truediv__(self, other) -> "RealDecimal":
        if not isinstance(other, RealDecimal):
            return NotImplemented
        from .product import div
        return div(self, other)

    def __repr__(self) -> str:
        shown = self._digits[:12]
        text = format_prefix(self.integer_part, shown)
        return f"<RealDecimal {text}...>"


def _spawn(engine: Iterator[int], witness: Witness | None,
           cell: _Cell) -> RealDecimal:
    """Materialize an engine: first item is the integer part, rest digits."""
    head = next(engine)
    value = RealDecimal(head, lambda k: next(engine), witness)
    value._stall_cell = cell
    return value


def _fix_prefix(prefix: int, emitted: int, target: int, scale: int):
    """Digits to emit when the result prefix extends to ``target``/10**scale.

    ``emitted`` is the highest fixed position (-1 none, 0 integer part,
    j >= 1 fractional digit j); ``prefix`` is the mantissa already emitted.
    The extension must agree with what was emitted: the scan machinery
    guarantees prefixes are never retracted, so a mismatch is a bug.
    """
    out = []
    if emitted < 0:
        head = target // pow10(scale)
        out.append(head)
        rest = target - head * pow10(scale)
        width = scale
    else:
        width = scale - emitted
        rest = target - prefix * pow10(width)
    assert 0 <= rest < pow10(max(width, 1)), "prefix retraction in digit scan"
    for i in range(width - 1, -1, -1):
        out.append(rest // pow10(i) % 10)
    return out


def _sum_engine(x: RealDecimal, y: RealDecimal, exact: Fraction | None,
                budget: int, cell: _Cell) -> Iterator[int]:
    X = x.integer_part
    Y = y.integer_part
    Xm, Ym = X, Y          # operand truncation mantissas at the last safe position
    m = 0                  # last position whose digit sum differed from 9
    emitted = -1
    prefix = 0
    idle = 0
    k = 0
    while True:
        k += 1
        ax = x.digit(k)
        by = y.digit(k)
        X = X * 10 + ax
        Y = Y * 10 + by
        if ax + by != 9:
            target = (X + Y) // 10  # (x_k + y_k) floored to k-1 places
            for item in _fix_prefix(prefix, emitted, target, k - 1):
                yield item
            prefix, emitted = target, k - 1
            m, Xm, Ym = k, X, Y
            idle = 0
        else:
            if k == m + 1 and exact is not None:
                # Candidate: the digit sums stay 9 forever past m, making
                # the result the terminating value x_m + y_m + 10**-m.
                candidate = Xm + Ym + 1
                if Fraction(candidate, pow10(m)) == exact:
                    cell.value = m
                    for item in _fix_prefix(prefix, emitted, candidate, m):
                        yield item
                    while True:
                        yield 0
            idle += 1
            if idle >= budget:
                raise FuelExhausted(
                    f"no certified digit after scanning {idle} positions "
                    f"(digit sums stuck at 9 up to position {k})",
                    budget=budget, position=k)


def add(x: RealDecimal, y: RealDecimal, fuel: int = DEFAULT_FUEL) -> RealDecimal:
    """Digit-by-digit sum; raises FuelExhausted on an unresolvable carry stall."""
    budget = _require_fuel(fuel)
    witness = witness_add(x.witness, y.witness)
    cell = _Cell()
    engine = _sum_engine(x, y, witness_value(witness), budget, cell)
    return _spawn(engine, witness, cell)


def neg(x: RealDecimal) -> RealDecimal:
    """Additive inverse.

    A witness that proves x terminating yields the exact terminating
    negation (0-tail).  Otherwise the nines-complement stream
    (-1-a0).(9-a1)(9-a2)... is emitted; for witness-less input this is
    value-correct but produces a 9-tail if the stream was secretly
    terminating, which the construction contract rules out of scope.
    """
    value = witness_value(x.witness)
    if value is not None and _is_terminating(value):
        return RealDecimal.from_rational(-value)
    return RealDecimal(-1 - x.integer_part, lambda k: 9 - x.digit(k),
                       witness_neg(x.witness))


def sub(x: RealDecimal, y: RealDecimal, fuel: int = DEFAULT_FUEL) -> RealDecimal:
    return add(x, neg(y), fuel)


def separate(x: RealDecimal, y: RealDecimal, fuel: int = DEFAULT_FUEL) -> int:
    """An index l certifying |x_k - y_k| >= 10**-l for every k > l.

    Finds the first truncation depth where the values differ, then the
    next position where the smaller value's digit is at most 8.  Equal
    inputs cannot be separated and exhaust the fuel budget.
    """
    budget = _require_fuel(fuel)
    X = x.integer_part
    Y = y.integer_part
    m = None
    if X != Y:
        m = 0
    else:
        for k in range(1, budget + 1):
            X = X * 10 + x.digit(k)
            Y = Y * 10 + y.digit(k)
            if X != Y:
                m = k
                break
        if m is None:
            raise FuelExhausted(
                f"no differing truncation within {budget} positions "
                "(the values may be equal)", budget=budget, position=budget)
    smaller = x if X < Y else y
    for l in range(m + 1, m + budget + 1):
        if smaller.digit(l) <= 8:
            return l
    raise FuelExhausted(
        f"no digit below 9 in the smaller operand within {budget} positions "
        f"after {m}", budget=budget, position=m + budget)


def sign(x: RealDecimal, fuel: int = DEFAULT_FUEL) -> SignClass:
    """Sign classification: negative iff the integer part is negative.

    Zero is only ever certified by an exact witness; a witness-less value
    that keeps producing zeros exhausts its fuel.
    """
    budget = _require_fuel(fuel)
    value = witness_value(x.witness)
    if value is not None:
        if value < 0:
            return SignClass.NEGATIVE
        return SignClass.ZERO if value == 0 else SignClass.POSITIVE
    if isinstance(x.witness, SqrtWitness):
        return SignClass.POSITIVE if x.witness.sign > 0 else SignClass.NEGATIVE
    if x.integer_part < 0:
        return SignClass.NEGATIVE
    if x.integer_part > 0:
        return SignClass.POSITIVE
    for k in range(1, budget + 1):
        if x.digit(k) > 0:
            return SignClass.POSITIVE
    raise FuelExhausted(
        f"all digits zero through position {budget} and no witness to "
        "certify an exact zero", budget=budget, position=budget)
