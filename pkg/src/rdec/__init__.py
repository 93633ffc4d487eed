"""Exact arithmetic on infinite decimal expansions.

Values are lazy digit streams in complement form; every emitted digit is
provably correct, exact rational witnesses decide the otherwise
semi-decidable carry cases, and a fuel budget turns the remaining
searches into total procedures with an explicit exhaustion error.
"""

from .errors import (
    DivisionByZero,
    FuelExhausted,
    LexError,
    NegativeRadicand,
    NonCanonicalInput,
    ParseError,
    RdecError,
    UnsupportedSqrtOperand,
)
from .oracle import (
    PeriodicExpansion,
    Rational,
    digit_stream,
    expansion_period,
    rat_add,
    rat_compare,
    rat_inv,
    rat_mul,
    rat_neg,
    rational_digit,
)
from .product import choose_scale, div, mul, recip, sqrt
from .scaled import (
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
from .stream import (
    DEFAULT_FUEL,
    RationalWitness,
    RealDecimal,
    SignClass,
    SqrtWitness,
    Witness,
    add,
    neg,
    separate,
    sign,
    sqrt_witness,
    sub,
    witness_add,
    witness_inv,
    witness_mul,
    witness_neg,
    witness_value,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_FUEL",
    "DivisionByZero",
    "FuelExhausted",
    "IntervalBound",
    "LexError",
    "NegativeRadicand",
    "NonCanonicalInput",
    "ParseError",
    "PeriodicExpansion",
    "Rational",
    "RationalWitness",
    "RdecError",
    "RealDecimal",
    "ScaledDecimal",
    "SignClass",
    "SqrtWitness",
    "UnsupportedSqrtOperand",
    "Witness",
    "add",
    "choose_scale",
    "digit_stream",
    "div",
    "expansion_period",
    "format_prefix",
    "mul",
    "neg",
    "parse_complement",
    "pow10",
    "rat_add",
    "rat_compare",
    "rat_inv",
    "rat_mul",
    "rat_neg",
    "rational_digit",
    "recip",
    "scaled_add",
    "scaled_compare",
    "scaled_digit",
    "scaled_format",
    "scaled_mul",
    "scaled_neg",
    "scaled_truncate",
    "separate",
    "sign",
    "sqrt",
    "sqrt_witness",
    "sub",
    "witness_add",
    "witness_inv",
    "witness_mul",
    "witness_neg",
    "witness_value",
]
