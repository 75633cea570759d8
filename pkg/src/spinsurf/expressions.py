"""Recursive-descent parser for real-valued expressions in x and y.

Grammar (standard precedence, left-associative binary operators):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom
    atom   := NUMBER | 'x' | 'y' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := 'sin' | 'cos' | 'exp'

Function names must be followed immediately by '('. Errors carry the
byte offset into the source string.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError

__all__ = ["Expression", "Number", "Variable", "Pi", "Neg", "BinOp", "Call", "parse_expression", "to_string"]

FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}


class Expression:
    """Base class for AST nodes."""

    def evaluate(self, x, y):
        raise NotImplementedError

    def __str__(self) -> str:
        return to_string(self)


@dataclass(frozen=True)
class Number(Expression):
    value: float

    def evaluate(self, x, y):
        return np.broadcast_to(self.value, np.broadcast(np.asarray(x), np.asarray(y)).shape).copy() \
            if np.ndim(x) or np.ndim(y) else self.value


@dataclass(frozen=True)
class Variable(Expression):
    name: str  # 'x' or 'y'

    def evaluate(self, x, y):
        return x if self.name == "x" else y


@dataclass(frozen=True)
class Pi(Expression):
    def evaluate(self, x, y):
        return Number(np.pi).evaluate(x, y)


@dataclass(frozen=True)
class Neg(Expression):
    arg: Expression

    def evaluate(self, x, y):
        return -self.arg.evaluate(x, y)


@dataclass(frozen=True)
class BinOp(Expression):
    op: str  # one of + - * /
    left: Expression
    right: Expression

    def evaluate(self, x, y):
        a, b = self.left.evaluate(x, y), self.right.evaluate(x, y)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b


@dataclass(frozen=True)
class Call(Expression):
    fn: str
    arg: Expression

    def evaluate(self, x, y):
        return FUNCTIONS[self.fn](self.arg.evaluate(x, y))


class _Parser:
    MAX_DEPTH = 150  # each nesting level costs several interpreter frames

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.depth = 0

    def error(self, message, expected=()):
        raise ParseError(message, self.pos, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            self.error(f"expected {ch!r}", expected=(ch,))
        self.pos += 1

    def parse(self) -> Expression:
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return node

    def expr(self) -> Expression:
        node = self.term()
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch and ch in "+-":
                self.pos += 1
                node = BinOp(ch, node, self.term())
            else:
                return node

    def term(self) -> Expression:
        node = self.factor()
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch and ch in "*/":
                self.pos += 1
                node = BinOp(ch, node, self.factor())
            else:
                return node

    def factor(self) -> Expression:
        self.depth += 1
        if self.depth > self.MAX_DEPTH:
            self.error("expression nested too deeply")
        try:
            self.skip_ws()
            if self.peek() == "-":
                self.pos += 1
                return Neg(self.factor())
            return self.atom()
        finally:
            self.depth -= 1

    def atom(self) -> Expression:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isdigit() or ch == ".":
            return self.number()
        if ch.isalpha() or ch == "_":
            return self.identifier()
        self.error("expected a number, variable, function call or '('",
                   expected=("number", "identifier", "("))

    def number(self) -> Number:
        start = self.pos
        n = len(self.text)
        while self.pos < n and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        if self.pos < n and self.text[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < n and self.text[self.pos] in "+-":
                self.pos += 1
            if self.pos < n and self.text[self.pos].isdigit():
                while self.pos < n and self.text[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # not an exponent after all
        token = self.text[start:self.pos]
        try:
            value = float(token)
        except ValueError:
            self.pos = start
            self.error(f"malformed number {token!r}")
        return Number(value)

    def identifier(self) -> Expression:
        start = self.pos
        n = len(self.text)
        while self.pos < n and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        if name in ("x", "y"):
            return Variable(name)
        if name == "pi":
            return Pi()
        if name in FUNCTIONS:
            # parenthesis must follow the function name directly
            if self.peek() != "(":
                self.error(f"function {name!r} requires parentheses", expected=("(",))
            self.pos += 1
            arg = self.expr()
            self.expect(")")
            return Call(name, arg)
        self.pos = start
        self.error(f"unknown identifier {name!r}")


def parse_expression(text: str) -> Expression:
    """Parse an expression or raise ParseError with a byte offset."""
    if not isinstance(text, str):
        raise ParseError("input is not a string", 0)
    parser = _Parser(text)
    try:
        return parser.parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", parser.pos) from None


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def _render(node: Expression, parent_prec: int, is_right: bool) -> str:
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Call):
        return f"{node.fn}({_render(node.arg, 0, False)})"
    if isinstance(node, Neg):
        inner = _render(node.arg, 3, False)
        text = f"-{inner}"
        return f"({text})" if parent_prec > 2 or (parent_prec == 2 and is_right) else text
    if isinstance(node, BinOp):
        prec = _PRECEDENCE[node.op]
        text = f"{_render(node.left, prec, False)} {node.op} {_render(node.right, prec + 1, True)}"
        return f"({text})" if prec < parent_prec else text
    raise TypeError(f"unknown node {node!r}")


def to_string(node: Expression) -> str:
    """Render a tree so that parsing the result reproduces it exactly."""
    return _render(node, 0, False)
