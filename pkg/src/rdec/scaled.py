"""Exact terminating-decimal arithmetic on scaled integers.

A :class:`ScaledDecimal` stores the value ``mantissa / 10**scale`` exactly.
Truncations and digit extraction use floor semantics, so negative values
are handled in complement form: the integer part rounds toward minus
infinity and every fractional digit stays in 0..9.  Example: -3.12 has
integer part -4 and fractional digits 8, 8 ("(-4).88").

No floating point is used anywhere; comparisons cross-scale to integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_POW10: list[int] = [1]


def pow10(n: int) -> int:
    """10**n with a grow-only cache (n >= 0)."""
    if n < 0:
        raise ValueError("pow10 exponent must be non-negative")
    while len(_POW10) <= n:
        _POW10.append(_POW10[-1] * 10)
    return _POW10[n]


class ScaledDecimal:
    """Exact terminating decimal ``mantissa / 10**scale``.

    Representations are not normalized; equality and ordering are by value.
    Immutable and safe to share.
    """

    __slots__ = ("mantissa", "scale")

    def __init__(self, mantissa: int, scale: int = 0):
        if scale < 0:
            raise ValueError("scale must be non-negative")
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "scale", scale)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledDecimal is immutable")

    @classmethod
    def from_fraction(cls, value: Fraction) -> "ScaledDecimal":
        """Exact conversion; the denominator must divide a power of ten."""
        q = value.denominator
        scale = 0
        while q % 2 == 0:
            q //= 2
            scale += 1
        fives = 0
        while q % 5 == 0:
            q //= 5
            fives += 1
        if q != 1:
            raise ValueError(f"{value} is not a terminating decimal")
        scale = max(scale, fives)
        return cls(value.numerator * (pow10(scale) // value.denominator), scale)

    def as_fraction(self) -> Fraction:
        return Fraction(self.mantissa, pow10(self.scale))

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        return scaled_compare(self, other) == 0

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __lt__(self, other) -> bool:
        return scaled_compare(self, other) < 0

    def __le__(self, other) -> bool:
        return scaled_compare(self, other) <= 0

    def __gt__(self, other) -> bool:
        return scaled_compare(self, other) > 0

    def __ge__(self, other) -> bool:
        return scaled_compare(self, other) >= 0

    def __add__(self, other) -> "ScaledDecimal":
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        return scaled_add(self, other)

    def __sub__(self, other) -> "ScaledDecimal":
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        return scaled_add(self, scaled_neg(other))

    def __mul__(self, other) -> "ScaledDecimal":
        if not isinstance(other, ScaledDecimal):
            return NotImplemented
        return scaled_mul(self, other)

    def __neg__(self) -> "ScaledDecimal":
        return scaled_neg(self)

    def __repr__(self) -> str:
        return f"ScaledDecimal({self.mantissa}, {self.scale})"

    def __str__(self) -> str:
        return scaled_format(self)


def scaled_add(a: ScaledDecimal, b: ScaledDecimal) -> ScaledDecimal:
    """Exact sum at scale max(a.scale, b.scale)."""
    k = max(a.scale, b.scale)
    return ScaledDecimal(
        a.mantissa * pow10(k - a.scale) + b.mantissa * pow10(k - b.scale), k
    )


def scaled_mul(a: ScaledDecimal, b: ScaledDecimal) -> ScaledDecimal:
    """Exact product at scale a.scale + b.scale."""
    return ScaledDecimal(a.mantissa * b.mantissa, a.scale + b.scale)


def scaled_neg(a: ScaledDecimal) -> ScaledDecimal:
    """Exact negation (mantissa sign flip)."""
    return ScaledDecimal(-a.mantissa, a.scale)


def scaled_compare(a: ScaledDecimal, b: ScaledDecimal) -> int:
    """Value trichotomy: -1, 0 or +1 via cross-scaled integer comparison."""
    k = max(a.scale, b.scale)
    lhs = a.mantissa * pow10(k - a.scale)
    rhs = b.mantissa * pow10(k - b.scale)
    return (lhs > rhs) - (lhs < rhs)


def scaled_truncate(a: ScaledDecimal, k: int) -> ScaledDecimal:
    """Floor of ``a`` to k fractional digits: the largest n/10**k <= a.

    Negative values floor toward minus infinity, matching complement-form
    digit extraction.
    """
    if k < 0:
        raise ValueError("truncation depth must be non-negative")
    if k >= a.scale:
        return ScaledDecimal(a.mantissa * pow10(k - a.scale), k)
    return ScaledDecimal(a.mantissa // pow10(a.scale - k), k)


def scaled_digit(a: ScaledDecimal, k: int) -> int:
    """The k-th fractional digit (k >= 1) of the complement-form expansion."""
    if k < 1:
        raise ValueError("digit position must be >= 1")
    if k >= a.scale:
        scaled = a.mantissa * pow10(k - a.scale)
    else:
        scaled = a.mantissa // pow10(a.scale - k)
    return scaled % 10


@dataclass(frozen=True)
class IntervalBound:
    """Half-open enclosure [lower, lower + 10**-width_scale)."""

    lower: ScaledDecimal
    width_scale: int

    def upper(self) -> ScaledDecimal:
        """Exclusive upper endpoint lower + 10**-width_scale."""
        return scaled_add(self.lower, ScaledDecimal(1, self.width_scale))

    def contains(self, value: Fraction) -> bool:
        return self.lower.as_fraction() <= value < self.upper().as_fraction()


def format_prefix(integer_part: int, digits, n: int | None = None,
                  mode: str = "complement") -> str:
    """Render a finite expansion prefix a0.a1...an.

    complement mode prints the integer part (parenthesized when negative)
    followed by the digits verbatim.  signed mode prints the conventional
    sign-magnitude decimal of the same exact value with n fractional digits.
    """
    digits = list(digits)
    if n is None:
        n = len(digits)
    if n < 0 or n > len(digits):
        raise ValueError("digit count out of range")
    digits = digits[:n]
    if any(not 0 <= d <= 9 for d in digits):
        raise ValueError("digits must be in 0..9")
    if mode == "complement":
        head = f"({integer_part})" if integer_part < 0 else str(integer_part)
        return head if n == 0 else head + "." + "".join(map(str, digits))
    if mode == "signed":
        mant = integer_part * pow10(n)
        for i, d in enumerate(digits):
            mant += d * pow10(n - 1 - i)
        sign = "-" if mant < 0 else ""
        mant = abs(mant)
        if n == 0:
            return f"{sign}{mant}"
        return f"{sign}{mant // pow10(n)}.{mant % pow10(n):0{n}d}"
    raise ValueError(f"unknown display mode {mode!r}")


def scaled_format(a: ScaledDecimal, mode: str = "complement") -> str:
    """Render a ScaledDecimal at its own scale."""
    head = scaled_truncate(a, 0).mantissa
    digits = [scaled_digit(a, k) for k in range(1, a.scale + 1)]
    return format_prefix(head, digits, mode=mode)


def parse_complement(text: str) -> ScaledDecimal:
    """Inverse of the complement rendering, e.g. "(-4).88" -> -3.12."""
    text = text.strip()
    if "." in text:
        head, _, frac = text.partition(".")
    else:
        head, frac = text, ""
    if head.startswith("(") and head.endswith(")"):
        head = head[1:-1]
    a0 = int(head)
    if frac and not frac.isdigit():
        raise ValueError(f"bad fractional digits in {text!r}")
    n = len(frac)
    mant = a0 * pow10(n) + (int(frac) if frac else 0)
    return ScaledDecimal(mant, n)
