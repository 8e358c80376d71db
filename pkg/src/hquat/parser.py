"""Parser and canonical formatter for quaternionic function expressions.

Grammar (EBNF):

    expr   := term (("+"|"-") term)* ;
    term   := factor (("*"|"/") factor)* ;
    factor := unary ("^" uint)? ;
    unary  := "-" unary | atom ;
    atom   := "p" | real | "(" expr ")"
            | ("exp"|"sin"|"cos") "(" expr ")" | ("i"|"j"|"k") ;
    real   := decimal literal with optional fraction and exponent ;

Binary operators associate to the left with the usual precedence
(+,- < *,/ < ^ < unary -); exponents are non-negative integers only and
implicit multiplication is not supported ("2p" is an error).  The literals
i, j, k build quaternion-constant leaves; they are admitted for
counterexample workflows and mark the tree as carrying a non-real constant.

A unary minus folds into a real literal ("-2" is the constant -2); applied
to anything else it desugars to multiplication by -1, since the tree has no
negation node.  :func:`format_expr` emits canonical text with minimal
parentheses such that parsing it reproduces the tree structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .functions import (
    Add,
    Cos,
    Div,
    Exp,
    FuncExpr,
    IntPow,
    Mul,
    P,
    QuatConst,
    RealConst,
    Sin,
    Sub,
    Var,
)
from .quaternion import I, J, K

_DEPTH_LIMIT = 256

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_UINT_RE = re.compile(r"\d+\Z")

_HEADS = {"exp": Exp, "sin": Sin, "cos": Cos}
_UNIT_CONSTS = {"i": I, "j": J, "k": K}


class ParseError(ValueError):
    """Syntax error with the offset of the first offending character."""

    def __init__(self, position: int, expected: str, found: str):
        super().__init__(f"expected {expected}, found {found} at position {position}")
        self.position = position
        self.expected = expected
        self.found = found


@dataclass(frozen=True)
class _Token:
    kind: str  # "number", "name", one of "+-*/^()", or "end"
    text: str
    pos: int

    def describe(self) -> str:
        return "end of input" if self.kind == "end" else f"{self.text!r}"


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            m = _NUMBER_RE.match(src, i)
            tokens.append(_Token("number", m.group(), i))
            i = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _NAME_RE.match(src, i)
            tokens.append(_Token("name", m.group(), i))
            i = m.end()
            continue
        raise ParseError(i, "a token", f"{ch!r}")
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.idx = 0
        self.depth = 0

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def advance(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.pos, expected, tok.describe())
        return self.advance()

    def _enter(self) -> None:
        self.depth += 1
        if self.depth > _DEPTH_LIMIT:
            raise ParseError(self.peek().pos, f"nesting depth <= {_DEPTH_LIMIT}", "deeper nesting")

    def expr(self) -> FuncExpr:
        self._enter()
        try:
            node = self.term()
            while self.peek().kind in ("+", "-"):
                op = self.advance()
                rhs = self.term()
                node = Add(node, rhs) if op.kind == "+" else Sub(node, rhs)
            return node
        finally:
            self.depth -= 1

    def term(self) -> FuncExpr:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            rhs = self.factor()
            node = Mul(node, rhs) if op.kind == "*" else Div(node, rhs)
        return node

    def factor(self) -> FuncExpr:
        node = self.unary()
        if self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "number" or not _UINT_RE.match(tok.text):
                raise ParseError(tok.pos, "a non-negative integer exponent", tok.describe())
            self.advance()
            node = IntPow(node, int(tok.text))
        return node

    def unary(self) -> FuncExpr:
        self._enter()
        try:
            if self.peek().kind == "-":
                self.advance()
                operand = self.unary()
                if isinstance(operand, RealConst):
                    return RealConst(-operand.value)
                return Mul(RealConst(-1.0), operand)
            return self.atom()
        finally:
            self.depth -= 1

    def atom(self) -> FuncExpr:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return RealConst(float(tok.text))
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        if tok.kind == "name":
            if tok.text == "p":
                self.advance()
                return P
            if tok.text in _HEADS:
                self.advance()
                self.expect("(", "'('")
                arg = self.expr()
                self.expect(")", "')'")
                return _HEADS[tok.text](arg)
            if tok.text in _UNIT_CONSTS:
                self.advance()
                return QuatConst(_UNIT_CONSTS[tok.text])
            raise ParseError(tok.pos, "p, a number, exp/sin/cos, i/j/k or '('", tok.describe())
        raise ParseError(tok.pos, "p, a number, exp/sin/cos, i/j/k or '('", tok.describe())


def parse(src: str) -> FuncExpr:
    """Parse expression text into a function tree."""
    parser = _Parser(_tokenize(src))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(tok.pos, "an operator or end of input", tok.describe())
    return node


# ---------------------------------------------------------------------------
# Canonical formatting
# ---------------------------------------------------------------------------

_LEVEL_ADD = 1
_LEVEL_MUL = 2
_LEVEL_POW = 3
_LEVEL_NEG = 4
_LEVEL_ATOM = 5

_HEAD_NAMES = {Exp: "exp", Sin: "sin", Cos: "cos"}


def _is_neg_sugar(expr: FuncExpr) -> bool:
    return (
        isinstance(expr, Mul)
        and isinstance(expr.lhs, RealConst)
        and expr.lhs.value == -1.0
        and not isinstance(expr.rhs, RealConst)
    )


def _level(expr: FuncExpr) -> int:
    if _is_neg_sugar(expr):
        return _LEVEL_NEG
    if isinstance(expr, (Add, Sub)):
        return _LEVEL_ADD
    if isinstance(expr, (Mul, Div)):
        return _LEVEL_MUL
    if isinstance(expr, IntPow):
        return _LEVEL_POW
    return _LEVEL_ATOM


def _render(expr: FuncExpr, min_level: int) -> str:
    s = _render_raw(expr)
    if _level(expr) < min_level:
        return f"({s})"
    return s


def _render_raw(expr: FuncExpr) -> str:
    if isinstance(expr, Var):
        return "p"
    if isinstance(expr, RealConst):
        return repr(expr.value)
    if isinstance(expr, QuatConst):
        for name, unit in _UNIT_CONSTS.items():
            if expr.value == unit:
                return name
        raise ValueError(f"quaternion constant {expr.value} is not expressible (only i, j, k are)")
    if _is_neg_sugar(expr):
        return "-" + _render(expr.rhs, _LEVEL_NEG)
    if isinstance(expr, Add):
        return f"{_render(expr.lhs, _LEVEL_ADD)}+{_render(expr.rhs, _LEVEL_ADD + 1)}"
    if isinstance(expr, Sub):
        return f"{_render(expr.lhs, _LEVEL_ADD)}-{_render(expr.rhs, _LEVEL_ADD + 1)}"
    if isinstance(expr, Mul):
        return f"{_render(expr.lhs, _LEVEL_MUL)}*{_render(expr.rhs, _LEVEL_MUL + 1)}"
    if isinstance(expr, Div):
        return f"{_render(expr.lhs, _LEVEL_MUL)}/{_render(expr.rhs, _LEVEL_MUL + 1)}"
    if isinstance(expr, IntPow):
        return f"{_render(expr.base, _LEVEL_NEG)}^{expr.exponent}"
    for head, name in _HEAD_NAMES.items():
        if isinstance(expr, head):
            return f"{name}({_render_raw(expr.arg)})"
    raise TypeError(f"cannot format node {expr!r}")


def format_expr(expr: FuncExpr) -> str:
    """Canonical text form; parse(format_expr(t)) is structurally t."""
    return _render_raw(expr)
