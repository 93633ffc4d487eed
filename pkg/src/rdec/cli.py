"""Expression front-end: parse, evaluate to N certified digits, render.

Grammar (left associative, unary minus binds tighter than * and /)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | primary
    primary := literal | 'sqrt' '(' expr ')' | '(' expr ')'

Literals are signed conventional decimals only; complement form is an
output mode, not an input syntax.  Accepted literal shapes: "3", "2.48",
"7/9", "0.(7)", "1.2(34)".  Repeating literals become exact rationals at
parse time.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

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
from .oracle import PeriodicExpansion
from .product import div, mul, sqrt
from .stream import DEFAULT_FUEL, RationalWitness, RealDecimal, SqrtWitness, add, neg, sub

MAX_DIGITS = 100_000
FUEL_ENV_VAR = "RDEC_FUEL"

# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------

TOKEN_KINDS = ("number", "rational", "repeating", "plus", "minus", "star",
               "slash", "lparen", "rparen", "sqrt_kw", "end")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int


_REPEATING = re.compile(r"\d+\.(\d*)\((\d+)\)")
_DECIMAL = re.compile(r"\d+\.\d+")
_RATIONAL = re.compile(r"\d+/\d+")
_INTEGER = re.compile(r"\d+")
_WORD = re.compile(r"[A-Za-z_]+")
_SINGLE = {"+": "plus", "-": "minus", "*": "star", "/": "slash",
           "(": "lparen", ")": "rparen"}


def tokenize(text: str) -> list[Token]:
    """Token stream for ``text``; raises LexError at the first bad character."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for pattern, kind in ((_REPEATING, "repeating"), (_DECIMAL, "number"),
                              (_RATIONAL, "rational"), (_INTEGER, "number")):
            match = pattern.match(text, i)
            if match:
                tokens.append(Token(kind, match.group(), i))
                i = match.end()
                break
        else:
            if ch in _SINGLE:
                tokens.append(Token(_SINGLE[ch], ch, i))
                i += 1
            else:
                match = _WORD.match(text, i)
                if match and match.group() == "sqrt":
                    tokens.append(Token("sqrt_kw", "sqrt", i))
                    i = match.end()
                else:
                    raise LexError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Abstract syntax (spans compare-insensitive so structural tests stay clean)
# ---------------------------------------------------------------------------

def _span_field():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Literal:
    value: Fraction
    span: tuple[int, int] = _span_field()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: tuple[int, int] = _span_field()


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"
    span: tuple[int, int] = _span_field()


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"
    span: tuple[int, int] = _span_field()


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"
    span: tuple[int, int] = _span_field()


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"
    span: tuple[int, int] = _span_field()


@dataclass(frozen=True)
class Sqrt:
    operand: "Expr"
    span: tuple[int, int] = _span_field()


Expr = Literal | Neg | Add | Sub | Mul | Div | Sqrt


def _literal_value(token: Token) -> Fraction:
    text = token.lexeme
    if token.kind == "number":
        if "." in text:
            whole, _, frac = text.partition(".")
            return Fraction(int(whole + frac), 10 ** len(frac))
        return Fraction(int(text))
    if token.kind == "rational":
        num, _, den = text.partition("/")
        if int(den) == 0:
            exc = DivisionByZero(f"rational literal {text!r} has zero denominator")
            exc.position = token.position
            raise exc
        return Fraction(int(num), int(den))
    match = _REPEATING.fullmatch(text)
    whole = int(text.partition(".")[0])
    pre = tuple(int(d) for d in match.group(1))
    per = tuple(int(d) for d in match.group(2))
    return PeriodicExpansion(whole, pre, per).to_rational()


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str, describe: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            found = repr(token.lexeme) if token.lexeme else "end of input"
            raise ParseError(f"expected {describe} but found {found}",
                             token.position, expected=kind)
        return self.advance()

    def expression(self) -> Expr:
        node = self.term()
        while self.peek().kind in ("plus", "minus"):
            op = self.advance()
            right = self.term()
            cls = Add if op.kind == "plus" else Sub
            node = cls(node, right, span=(node.span[0], right.span[1]))
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind in ("star", "slash"):
            op = self.advance()
            right = self.factor()
            cls = Mul if op.kind == "star" else Div
            node = cls(node, right, span=(node.span[0], right.span[1]))
        return node

    def factor(self) -> Expr:
        if self.peek().kind == "minus":
            token = self.advance()
            operand = self.factor()
            return Neg(operand, span=(token.position, operand.span[1]))
        return self.primary()

    def primary(self) -> Expr:
        token = self.peek()
        if token.kind in ("number", "rational", "repeating"):
            self.advance()
            return Literal(_literal_value(token),
                           span=(token.position, token.position + len(token.lexeme)))
        if token.kind == "sqrt_kw":
            self.advance()
            self.expect("lparen", "'(' after sqrt")
            inner = self.expression()
            close = self.expect("rparen", "')'")
            return Sqrt(inner, span=(token.position, close.position + 1))
        if token.kind == "lparen":
            self.advance()
            inner = self.expression()
            self.expect("rparen", "')'")
            return inner
        found = repr(token.lexeme) if token.lexeme else "end of input"
        raise ParseError(f"expected a literal, 'sqrt' or '(' but found {found}",
                         token.position, expected="primary")


def parse(tokens: list[Token]) -> Expr:
    """Parse a token stream to an AST; raises ParseError with an offset."""
    parser = _Parser(tokens)
    node = parser.expression()
    parser.expect("end", "end of input")
    return node


def parse_source(text: str) -> Expr:
    return parse(tokenize(text))


# ---------------------------------------------------------------------------
# Evaluation and rendering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalConfig:
    digits: int = 30
    fuel: int = DEFAULT_FUEL
    display: str = "signed"
    output: str = "text"

    def __post_init__(self):
        if not 0 <= self.digits <= MAX_DIGITS:
            raise ValueError(f"digits must be within 0..{MAX_DIGITS}")
        if self.display not in ("complement", "signed"):
            raise ValueError(f"unknown display mode {self.display!r}")
        if self.output not in ("text", "json"):
            raise ValueError(f"unknown output mode {self.output!r}")


def _with_span(exc: RdecError, span: tuple[int, int]) -> RdecError:
    if getattr(exc, "span", None) is None:
        exc.span = span
    return exc


def evaluate(expr: Expr, cfg: EvalConfig) -> RealDecimal:
    """Map the AST onto the library operations, tagging errors with spans."""
    try:
        if isinstance(expr, Literal):
            return RealDecimal.from_rational(expr.value)
        if isinstance(expr, Neg):
            return neg(evaluate(expr.operand, cfg))
        if isinstance(expr, Add):
            return add(evaluate(expr.left, cfg), evaluate(expr.right, cfg),
                       cfg.fuel)
        if isinstance(expr, Sub):
            return sub(evaluate(expr.left, cfg), evaluate(expr.right, cfg),
                       cfg.fuel)
        if isinstance(expr, Mul):
            return mul(evaluate(expr.left, cfg), evaluate(expr.right, cfg),
                       cfg.fuel)
        if isinstance(expr, Div):
            return div(evaluate(expr.left, cfg), evaluate(expr.right, cfg),
                       cfg.fuel)
        if isinstance(expr, Sqrt):
            operand = evaluate(expr.operand, cfg)
            witness = operand.witness
            if not isinstance(witness, RationalWitness):
                raise UnsupportedSqrtOperand(
                    "sqrt requires an operand with an exact rational value")
            return sqrt(witness.value)
    except RdecError as exc:
        raise _with_span(exc, expr.span)
    raise TypeError(f"not an expression node: {expr!r}")


def _digit_run(x: RealDecimal, n: int) -> str:
    return "".join(str(x.digit(k)) for k in range(1, n + 1))


def render(x: RealDecimal, cfg: EvalConfig, expr_text: str = "") -> str:
    """Digit string in the chosen display form, or a JSON object."""
    n = cfg.digits
    digits = _digit_run(x, n)
    if cfg.output == "json":
        payload = {
            "expr": expr_text,
            "digits_requested": n,
            "integer_part": x.integer_part,
            "digits": digits,
            "display": cfg.display,
        }
        witness = x.witness
        if isinstance(witness, RationalWitness):
            payload["witness"] = {"type": "rational", "value": str(witness.value)}
        elif isinstance(witness, SqrtWitness):
            payload["witness"] = {"type": "sqrt_rational",
                                  "radicand": str(witness.radicand),
                                  "sign": witness.sign}
        payload["exact"] = (isinstance(witness, RationalWitness)
                            and x.truncate(n).as_fraction() == witness.value)
        return json.dumps(payload)
    if cfg.display == "complement" or x.integer_part >= 0:
        head = (f"({x.integer_part})" if x.integer_part < 0
                else str(x.integer_part))
        return head if n == 0 else f"{head}.{digits}"
    # Signed display of a negative value: magnitude digits come from the
    # additive inverse, which is non-negative in complement form.
    magnitude = neg(x)
    body = _digit_run(magnitude, n)
    head = str(magnitude.integer_part)
    return f"-{head}" if n == 0 else f"-{head}.{body}"


def evaluate_source(text: str, cfg: EvalConfig) -> str:
    """tokenize + parse + evaluate + render in one step."""
    return render(evaluate(parse_source(text), cfg), cfg, text)


# ---------------------------------------------------------------------------
# Command line
# ---------------------------------------------------------------------------

_EXIT_CODES = (
    ((LexError, ParseError), 2),
    ((FuelExhausted,), 3),
    ((DivisionByZero, NegativeRadicand, UnsupportedSqrtOperand,
      NonCanonicalInput), 4),
)


def _exit_code(exc: RdecError) -> int:
    for classes, code in _EXIT_CODES:
        if isinstance(exc, classes):
            return code
    return 4


def _report(exc: RdecError, cfg: EvalConfig, expr_text: str,
            prefix: str = "") -> int:
    where = ""
    position = getattr(exc, "position", None)
    span = getattr(exc, "span", None)
    if isinstance(exc, (LexError, ParseError)):
        where = f" at offset {position}"
    elif span is not None:
        where = f" at offsets {span[0]}..{span[1]}"
    elif position is not None:
        where = f" at position {position}"
    if cfg.output == "json":
        payload = {"expr": expr_text,
                   "error": {"type": type(exc).__name__, "message": str(exc)}}
        if position is not None:
            payload["error"]["position"] = position
        if span is not None:
            payload["error"]["span"] = list(span)
        print(json.dumps(payload))
    else:
        print(f"{prefix}error[{type(exc).__name__}]{where}: {exc}",
              file=sys.stderr)
    return _exit_code(exc)


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdec",
        description="Evaluate arithmetic expressions to certified decimal digits.")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser):
        sub.add_argument("--digits", type=int, default=30,
                         help="fractional digits to emit (default 30)")
        sub.add_argument("--fuel", type=int, default=None,
                         help=f"scan budget before giving up (default {DEFAULT_FUEL}, "
                              f"or ${FUEL_ENV_VAR})")
        sub.add_argument("--display", choices=("complement", "signed"),
                         default="signed", help="digit rendering form")
        sub.add_argument("--json", action="store_true",
                         help="emit one JSON object per result")

    cmd_eval = commands.add_parser("eval", help="evaluate one expression")
    cmd_eval.add_argument("expr")
    add_common(cmd_eval)

    cmd_batch = commands.add_parser(
        "batch", help="evaluate one expression per line of a file ('-' is stdin)")
    cmd_batch.add_argument("path")
    add_common(cmd_batch)
    return parser


def _config_from_args(parser: argparse.ArgumentParser,
                      args: argparse.Namespace) -> EvalConfig:
    fuel = args.fuel
    if fuel is None:
        raw = os.environ.get(FUEL_ENV_VAR)
        if raw is None:
            fuel = DEFAULT_FUEL
        else:
            try:
                fuel = int(raw)
            except ValueError:
                parser.error(f"{FUEL_ENV_VAR} must be an integer, got {raw!r}")
    if fuel < 1:
        parser.error("fuel must be a positive integer")
    try:
        return EvalConfig(digits=args.digits, fuel=fuel,
                          display=args.display,
                          output="json" if args.json else "text")
    except ValueError as exc:
        parser.error(str(exc))


def main(argv: list[str] | None = None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(parser, args)

    if args.command == "eval":
        try:
            print(evaluate_source(args.expr, cfg))
        except RdecError as exc:
            return _report(exc, cfg, args.expr)
        return 0

    try:
        if args.path == "-":
            text = sys.stdin.read()
        else:
            with open(args.path, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        print(f"error[IOError]: {exc}", file=sys.stderr)
        return 5
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            print(evaluate_source(line, cfg))
        except RdecError as exc:
            return _report(exc, cfg, line, prefix=f"line {lineno}: ")
    return 0


if __name__ == "__main__":
    sys.exit(main())
