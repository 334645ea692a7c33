"""Recursive-descent parser and dimension-checked evaluator for physics expressions.

Grammar (whitespace-insensitive, no implicit multiplication):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := base ('^' unary)?          # right-associative
    base   := NUMBER unit? | IDENT | IDENT '(' expr ')' | '(' expr ')'
    unit   := '[' unit_expr ']'

Numbers may carry a bracketed unit annotation ("5.972e24 [kg]") built from
the 7 SI base symbols plus eV, combined with '*', '/' and rational '^'
exponents (the literal 1 is allowed as a dimensionless unit, so "[1/s]"
works).  Identifiers resolve against a constants registry at evaluation
time, so unknown names parse fine and only fail when evaluated.

The exponent operand of '^' must fold to a rational constant at parse time;
dimension algebra with irrational exponents is rejected up front.  This
keeps every dimension vector an exact rational.
"""

from __future__ import annotations

import decimal
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .constants import DEFAULT_REGISTRY, EV, ConstantsRegistry
from .errors import DomainError
from .units import DIMENSIONLESS, DimensionError, DimensionVector, Quantity

__all__ = [
    "parse", "evaluate", "dimension_of", "check_dimension",
    "format_expression", "parse_expected_dimension",
    "AstNode", "Number", "Const", "BinOp", "Func", "Neg",
    "ParseError", "EvaluationError", "UnknownIdentifierError", "DimensionReport",
]

FUNCTIONS = ("sqrt", "exp", "ln", "abs")

_UNIT_SYMBOLS = {
    "m": Quantity(1.0, DimensionVector(m=1)),
    "kg": Quantity(1.0, DimensionVector(kg=1)),
    "s": Quantity(1.0, DimensionVector(s=1)),
    "A": Quantity(1.0, DimensionVector(A=1)),
    "K": Quantity(1.0, DimensionVector(K=1)),
    "mol": Quantity(1.0, DimensionVector(mol=1)),
    "cd": Quantity(1.0, DimensionVector(cd=1)),
    "eV": Quantity(EV, DimensionVector(kg=1, m=2, s=-2)),
}


# --- errors -----------------------------------------------------------------

class ParseError(ValueError):
    """Token mismatch while parsing; carries offset and what was expected."""

    def __init__(self, offset: int, expected: str, found: str):
        super().__init__(f"parse error at offset {offset}: expected {expected}, found {found}")
        self.offset = offset
        self.expected = expected
        self.found = found


class EvaluationError(ValueError):
    """Evaluation failed; ``span`` is the offending subexpression's [start, end)."""

    label = "evaluation-error"

    def __init__(self, message: str, span: tuple[int, int]):
        super().__init__(f"{message} (at offsets {span[0]}..{span[1]})")
        self.span = span


class UnknownIdentifierError(EvaluationError):
    label = "unknown-identifier"


class ExpressionDimensionError(EvaluationError):
    label = "dimension-error"

    def __init__(self, message, span, left, right):
        super().__init__(message, span)
        self.left = left
        self.right = right


class ExpressionDomainError(EvaluationError):
    label = "domain-error"


class ExpressionRangeError(EvaluationError):
    label = "range-error"


# --- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Number:
    value: float
    unit: Optional[Quantity]  # multiplier carried by a unit annotation, or None
    literal: str = field(compare=False)
    unit_literal: Optional[str] = field(compare=False, default=None)
    span: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class Const:
    name: str
    span: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "AstNode"
    right: "AstNode"
    exponent: Optional[Fraction] = None  # folded value when op == '^'
    span: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class Func:
    name: str
    arg: "AstNode"
    span: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass(frozen=True)
class Neg:
    arg: "AstNode"
    span: tuple[int, int] = field(compare=False, default=(0, 0))


AstNode = Union[Number, Const, BinOp, Func, Neg]


# --- lexer ------------------------------------------------------------------

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPERATORS = set("+-*/^()[]")


@dataclass(frozen=True)
class _Token:
    kind: str  # 'number', 'ident', an operator char, or 'end'
    text: str
    start: int

    @property
    def end(self) -> int:
        return self.start + len(self.text)

    def describe(self) -> str:
        return "end of input" if self.kind == "end" else f"{self.text!r}"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER_RE.match(text, i)
            if not m:
                raise ParseError(i, "number", repr(ch))
            tokens.append(_Token("number", m.group(0), i))
            i = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _IDENT_RE.match(text, i)
            tokens.append(_Token("ident", m.group(0), i))
            i = m.end()
            continue
        if ch in _OPERATORS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(i, "a token", repr(ch))
    tokens.append(_Token("end", "", n))
    return tokens


def _literal_fraction(literal: str) -> Fraction:
    # Decimal handles every shape the NUMBER regex admits, exactly.
    return Fraction(decimal.Decimal(literal))


# --- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, max_depth: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.depth = 0
        self.max_depth = max_depth

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.start, expected, tok.describe())
        return self.advance()

    def _descend(self):
        self.depth += 1
        if self.depth > self.max_depth:
            raise ParseError(self.peek().start, f"nesting no deeper than {self.max_depth}",
                             "deeper nesting")

    def parse(self) -> AstNode:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.start, "end of input", tok.describe())
        return node

    def expr(self) -> AstNode:
        self._descend()
        try:
            node = self.term()
            while self.peek().kind in ("+", "-"):
                op = self.advance().kind
                right = self.term()
                node = BinOp(op, node, right, span=(node.span[0], right.span[1]))
            return node
        finally:
            self.depth -= 1

    def term(self) -> AstNode:
        node = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            right = self.unary()
            node = BinOp(op, node, right, span=(node.span[0], right.span[1]))
        return node

    def unary(self) -> AstNode:
        self._descend()
        try:
            tok = self.peek()
            if tok.kind == "-":
                self.advance()
                arg = self.unary()
                return Neg(arg, span=(tok.start, arg.span[1]))
            return self.factor()
        finally:
            self.depth -= 1

    def factor(self) -> AstNode:
        node = self.base()
        if self.peek().kind == "^":
            caret = self.advance()
            exp_node = self.unary()
            folded = _fold_rational(exp_node)
            if folded is None:
                raise ParseError(caret.end, "a rational constant exponent",
                                 "a non-constant or irrational exponent")
            node = BinOp("^", node, exp_node, exponent=folded,
                         span=(node.span[0], exp_node.span[1]))
        return node

    def base(self) -> AstNode:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            value = float(tok.text)
            unit = None
            unit_literal = None
            end = tok.end
            if self.peek().kind == "[":
                unit, unit_literal, end = self.unit_annotation()
            return Number(value, unit, literal=tok.text, unit_literal=unit_literal,
                          span=(tok.start, end))
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "(":
                if tok.text not in FUNCTIONS:
                    raise ParseError(tok.start, f"one of the functions {'/'.join(FUNCTIONS)}",
                                     tok.describe())
                self.advance()
                arg = self.expr()
                close = self.expect(")", "')'")
                return Func(tok.text, arg, span=(tok.start, close.end))
            return Const(tok.text, span=(tok.start, tok.end))
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            close = self.expect(")", "')'")
            return _respan(node, (tok.start, close.end))
        raise ParseError(tok.start, "a factor (number, identifier, or '(')", tok.describe())

    # --- unit sublanguage ---------------------------------------------------

    def unit_annotation(self) -> tuple[Quantity, str, int]:
        open_tok = self.expect("[", "'['")
        unit = self.unit_expr()
        close = self.expect("]", "']'")
        literal = self._slice_source(open_tok.end, close.start)
        return unit, literal, close.end

    def unit_expr(self) -> Quantity:
        q = self.unit_term()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            rhs = self.unit_term()
            q = q * rhs if op == "*" else q / rhs
        return q

    def unit_term(self) -> Quantity:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            q = self.unit_expr()
            self.expect(")", "')'")
        elif tok.kind == "number":
            if _literal_fraction(tok.text) != 1:
                raise ParseError(tok.start, "the literal 1 or a unit symbol", tok.describe())
            self.advance()
            q = Quantity(1.0)
        elif tok.kind == "ident":
            if tok.text not in _UNIT_SYMBOLS:
                raise ParseError(tok.start, f"one of the unit symbols {', '.join(_UNIT_SYMBOLS)}",
                                 tok.describe())
            self.advance()
            q = _UNIT_SYMBOLS[tok.text]
        else:
            raise ParseError(tok.start, "a unit symbol", tok.describe())
        if self.peek().kind == "^":
            self.advance()
            q = q ** self.unit_exponent()
        return q

    def unit_exponent(self, parenthesized: bool = False) -> Fraction:
        # Bare exponents are signed integers; a rational like 1/2 must be
        # parenthesized, since '/' otherwise belongs to unit division.
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            p = self.unit_exponent(parenthesized=True)
            self.expect(")", "')'")
            return p
        sign = 1
        if tok.kind == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        num_tok = self.expect("number", "an integer exponent")
        num = _literal_fraction(num_tok.text)
        if num.denominator != 1:
            raise ParseError(num_tok.start, "an integer", num_tok.describe())
        if parenthesized and self.peek().kind == "/":
            self.advance()
            den_tok = self.expect("number", "an integer denominator")
            den = _literal_fraction(den_tok.text)
            if den.denominator != 1 or den == 0:
                raise ParseError(den_tok.start, "a nonzero integer", den_tok.describe())
            return Fraction(sign * num.numerator, den.numerator)
        return Fraction(sign * num.numerator)

    def _slice_source(self, start: int, end: int) -> str:
        # Reconstruct the annotation text from the tokens inside the brackets.
        parts = [t.text for t in self.tokens if start <= t.start < end and t.kind != "end"]
        return "".join(parts)


def _respan(node: AstNode, span: tuple[int, int]) -> AstNode:
    cls = type(node)
    kwargs = {f: getattr(node, f) for f in node.__dataclass_fields__}
    kwargs["span"] = span
    return cls(**kwargs)


def _fold_rational(node: AstNode) -> Optional[Fraction]:
    """Fold a subtree to an exact rational, or None if it is not a constant."""
    if isinstance(node, Number):
        if node.unit is not None:
            return None
        return _literal_fraction(node.literal)
    if isinstance(node, Neg):
        inner = _fold_rational(node.arg)
        return None if inner is None else -inner
    if isinstance(node, BinOp):
        left = _fold_rational(node.left)
        right = _fold_rational(node.right)
        if left is None or right is None:
            return None
        try:
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if node.op == "/":
                return left / right
            if node.op == "^":
                if right.denominator != 1:
                    return None  # rational ** non-integer is generally irrational
                return left ** right.numerator
        except ZeroDivisionError:
            return None
    return None


def parse(text: str, max_depth: int = 64) -> AstNode:
    """Parse ``text`` into an AST, or raise :class:`ParseError`.

    Total by construction: every failure mode raises ParseError, including
    nesting beyond ``max_depth``.
    """
    return _Parser(text, max_depth).parse()


# --- evaluation -------------------------------------------------------------

def evaluate(node: AstNode, registry: ConstantsRegistry = DEFAULT_REGISTRY) -> Quantity:
    """Dimension-checked evaluation against a constants registry."""
    return _eval(node, registry, values=True)


def dimension_of(node: AstNode, registry: ConstantsRegistry = DEFAULT_REGISTRY) -> DimensionVector:
    """Propagate dimensions only; never raises domain errors for bad values."""
    return _eval(node, registry, values=False).dim


def _eval(node: AstNode, registry: ConstantsRegistry, values: bool) -> Quantity:
    if isinstance(node, Number):
        q = Quantity(node.value if values else 1.0)
        if node.unit is not None:
            scale = node.unit if values else Quantity(1.0, node.unit.dim)
            q = q * scale
        return q

    if isinstance(node, Const):
        try:
            return registry[node.name]
        except KeyError:
            raise UnknownIdentifierError(f"unknown identifier {node.name!r}", node.span) from None

    if isinstance(node, Neg):
        return -_eval(node.arg, registry, values)

    if isinstance(node, BinOp):
        left = _eval(node.left, registry, values)
        if node.op == "^":
            try:
                return left ** node.exponent
            except DomainError as exc:
                raise ExpressionDomainError(str(exc), node.span) from exc
            except OverflowError as exc:
                raise ExpressionRangeError(str(exc), node.span) from exc
        right = _eval(node.right, registry, values)
        try:
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            # division: a zero divisor only matters when computing values
            if not values:
                return Quantity(1.0, left.dim - right.dim)
            return left / right
        except DimensionError as exc:
            raise ExpressionDimensionError(
                f"operands of {node.op!r} differ in dimension", node.span,
                exc.left, exc.right) from exc
        except ZeroDivisionError as exc:
            raise ExpressionDomainError("division by zero", node.span) from exc
        except OverflowError as exc:
            raise ExpressionRangeError(str(exc), node.span) from exc

    if isinstance(node, Func):
        arg = _eval(node.arg, registry, values)
        if node.name == "sqrt":
            try:
                return arg ** Fraction(1, 2)
            except DomainError as exc:
                raise ExpressionDomainError(str(exc), node.span) from exc
        if node.name == "abs":
            return abs(arg)
        # exp and ln act on pure numbers only
        if not arg.is_dimensionless:
            raise ExpressionDimensionError(
                f"{node.name} requires a dimensionless argument", node.span,
                arg.dim, DIMENSIONLESS)
        if not values:
            return Quantity(1.0)
        if node.name == "exp":
            try:
                return Quantity(math.exp(arg.value))
            except OverflowError as exc:
                raise ExpressionRangeError("exp overflowed", node.span) from exc
        if node.name == "ln":
            if arg.value <= 0.0:
                raise ExpressionDomainError("ln of a non-positive value", node.span)
            return Quantity(math.log(arg.value))

    raise TypeError(f"not an AST node: {node!r}")


# --- dimension reports ------------------------------------------------------

@dataclass(frozen=True)
class DimensionReport:
    computed: DimensionVector
    expected: DimensionVector

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{verdict}: computed {self.computed}, expected {self.expected}"


def check_dimension(node: AstNode, expected: DimensionVector,
                    registry: ConstantsRegistry = DEFAULT_REGISTRY) -> DimensionReport:
    """Compare the expression's dimension against an expected vector."""
    return DimensionReport(computed=dimension_of(node, registry), expected=expected)


def parse_expected_dimension(text: str) -> DimensionVector:
    """Parse a bracketed unit expression like "[kg*m^2/s^2]" to its dimension."""
    text = text.strip()
    parser = _Parser(text, max_depth=64)
    unit, _, _ = parser.unit_annotation()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(tok.start, "end of input", tok.describe())
    return unit.dim


# --- printing ---------------------------------------------------------------

def format_expression(node: AstNode) -> str:
    """Canonical, fully parenthesized rendering; reparsing it reproduces the AST."""
    if isinstance(node, Number):
        if node.unit_literal is not None:
            return f"{node.literal} [{node.unit_literal}]"
        return node.literal
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        return f"(-{format_expression(node.arg)})"
    if isinstance(node, BinOp):
        return f"({format_expression(node.left)} {node.op} {format_expression(node.right)})"
    if isinstance(node, Func):
        return f"{node.name}({format_expression(node.arg)})"
    raise TypeError(f"not an AST node: {node!r}")
