"""Tiny expression language for manifest-supplied form components.

Grammar (recursive descent, standard precedence):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := unary ('^' factor)?          # right-associative power
    unary  := '-' unary | atom
    atom   := NUMBER | 'pi' | 'x' | 'y' | 'z'
            | ('sin' | 'cos' | 'exp') '(' expr ')'
            | '(' expr ')'

Evaluation is vectorized over numpy coordinate arrays.
"""

from __future__ import annotations

import math
import re

import numpy as np


class ExprError(ValueError):
    """Malformed expression text."""


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_]+)|(\*\*|[-+*/^()]))")

_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}
_CONSTANTS = {"pi": math.pi}
_VARIABLES = ("x", "y", "z")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprError(f"unexpected character at {text[pos:]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", float(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        k, v = self.tokens[self.i]
        if (kind is not None and k != kind) or (value is not None and v != value):
            raise ExprError(f"expected {value or kind}, got {v!r}")
        self.i += 1
        return v

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise ExprError(f"trailing input at {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take("op")
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take("op")
            rhs = self.factor()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def factor(self):
        node = self.unary()
        if self.peek() == ("op", "^"):
            self.take("op")
            return ("pow", node, self.factor())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take("op")
            return ("neg", self.unary())
        return self.atom()

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return ("const", value)
        if kind == "name":
            self.take()
            if value in _CONSTANTS:
                return ("const", _CONSTANTS[value])
            if value in _VARIABLES:
                return ("var", value)
            if value in _FUNCTIONS:
                self.take("op", "(")
                arg = self.expr()
                self.take("op", ")")
                return ("call", value, arg)
            raise ExprError(f"unknown name {value!r}")
        if (kind, value) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ExprError(f"unexpected token {value!r}")


def parse_expr(text: str):
    """Parse to an AST tuple; raises ExprError on malformed input."""
    return _Parser(text).parse()


def evaluate(node, x, y, z):
    op = node[0]
    if op == "const":
        return node[1]
    if op == "var":
        return {"x": x, "y": y, "z": z}[node[1]]
    if op == "neg":
        return -evaluate(node[1], x, y, z)
    if op == "call":
        return _FUNCTIONS[node[1]](evaluate(node[2], x, y, z))
    a = evaluate(node[1], x, y, z)
    b = evaluate(node[2], x, y, z)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a**b
    raise AssertionError(f"unknown node {op!r}")


def compile_expr(text: str):
    """Parse once, return f(x, y, z) evaluating over numpy arrays."""
    ast = parse_expr(text)
    return lambda x, y, z: np.broadcast_to(
        np.asarray(evaluate(ast, x, y, z), dtype=float), np.shape(x)
    ).copy()
