"""A small expression language for the functions fed to the calculus and the inequalities.

Grammar (whitespace is insignificant)::

    expr    = term { ("+" | "-") term }
    term    = unary { ("*" | "/") unary }
    unary   = "-" unary | power
    power   = atom [ "^" exponent ]
    exponent = "-" exponent | power
    atom    = number | "x" | "a" | func "(" expr ")" | "(" expr ")"
    func    = "exp" | "sin" | "abs"
    number  = digits [ "." [digits] ] [ exponent-part ] | "." digits [ exponent-part ]

``^`` is right-associative and binds tighter than unary minus, so ``-x^2`` is
``-(x^2)`` and ``2^-1`` is ``2^(-1)``.  ``a`` stands for the fractal order.

Trees are built from frozen dataclasses, so two parses compare equal exactly
when they are structurally identical.  ``to_source`` prints a fully
parenthesized form that parses back to the same tree.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import LfcError

FUNCS = {"exp": np.exp, "sin": np.sin, "abs": np.abs}


class ParseError(LfcError):
    def __init__(self, message, offset, expected):
        super().__init__(f"{message} at offset {offset} (expected {expected})")
        self.offset = offset
        self.expected = expected


class ExprEvalError(LfcError):
    def __init__(self, message, subexpr):
        super().__init__(f"{message} in {subexpr}")
        self.subexpr = subexpr


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "a"


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


_TOKEN = re.compile(r"""
    (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z]+)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)
_SPACE = " \t\n\r\f\v"


def _tokenize(src):
    tokens = []
    i, n = 0, len(src)
    while i < n:
        if src[i] in _SPACE:
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", i, "a number, name, operator or parenthesis")
        kind = m.lastgroup
        text = m.group()
        if kind == "ident" and text not in ("x", "a") and text not in FUNCS:
            raise ParseError(f"unknown name {text!r}", i, "x, a, exp, sin or abs")
        tokens.append((kind, text, i))
        i = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text, what):
        kind, t, off = self.peek()
        if t != text or kind != "op":
            raise ParseError(f"unexpected {_show(kind, t)}", off, what)
        self.take()

    def parse(self):
        tree = self.expr()
        kind, t, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {_show(kind, t)}", off, "an operator or end of input")
        return tree

    def expr(self):
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return BinOp("^", base, self.exponent())
        return base

    def exponent(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.exponent())
        return self.power()

    def atom(self):
        kind, t, off = self.take()
        if kind == "num":
            value = float(t)
            if not math.isfinite(value):
                raise ParseError(f"literal {t!r} overflows", off, "a finite number")
            return Num(value)
        if kind == "ident":
            if t in FUNCS:
                self.expect("(", f"'(' after {t}")
                arg = self.expr()
                self.expect(")", "')'")
                return Call(t, arg)
            return Var(t)
        if (kind, t) == ("op", "("):
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        raise ParseError(f"unexpected {_show(kind, t)}", off, "an operand")


def _show(kind, text):
    return "end of input" if kind == "end" else repr(text)


def parse(src):
    """Parse ``src`` into a tree; raises ``ParseError`` with a character offset."""
    if not isinstance(src, str):
        raise TypeError("expression source must be str")
    return _Parser(src).parse()


def to_source(e):
    """Fully parenthesized text that parses back to ``e``."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, Call):
        return f"{e.func}({to_source(e.arg)})"
    return f"({to_source(e.left)} {e.op} {to_source(e.right)})"


def evaluate(e, x, alpha):
    """Evaluate at ``x`` (float or array) with ``a`` bound to ``alpha``.

    Division by zero, a negative base under a non-integer power and any
    non-finite intermediate raise ``ExprEvalError`` naming the subexpression.
    """
    a = float(alpha)
    xs = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(e, xs, a)
    out = np.broadcast_to(out, xs.shape)
    return float(out) if out.ndim == 0 else np.array(out)


def _check(value, node, what="non-finite result"):
    if not np.all(np.isfinite(value)):
        raise ExprEvalError(what, to_source(node))
    return value


def _eval(e, x, a):
    if isinstance(e, Num):
        return np.float64(e.value)
    if isinstance(e, Var):
        return x if e.name == "x" else np.float64(a)
    if isinstance(e, Neg):
        return -_eval(e.operand, x, a)
    if isinstance(e, Call):
        return _check(FUNCS[e.func](_eval(e.arg, x, a)), e)
    left = _eval(e.left, x, a)
    right = _eval(e.right, x, a)
    if e.op == "+":
        return _check(left + right, e)
    if e.op == "-":
        return _check(left - right, e)
    if e.op == "*":
        return _check(left * right, e)
    if e.op == "/":
        if np.any(right == 0):
            raise ExprEvalError("division by zero", to_source(e))
        return _check(left / right, e)
    left, right = np.broadcast_arrays(left, right)
    bad = (left < 0) & (right != np.floor(right))
    if np.any(bad):
        raise ExprEvalError("negative base with non-integer exponent", to_source(e))
    if np.any((left == 0) & (right < 0)):
        raise ExprEvalError("zero raised to a negative power", to_source(e))
    return _check(np.power(left, right), e)


def compile_expr(src, alpha):
    """Parse once; return a vectorized ``f(x)`` with ``a`` fixed."""
    tree = parse(src)
    return lambda x: evaluate(tree, x, alpha)
