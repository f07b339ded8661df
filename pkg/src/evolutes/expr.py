"""Tiny symbolic expression layer for curve components.

Supports one free variable t, the functions sin/cos/tan/exp/log/sqrt, the
four arithmetic operators, and powers with constant exponent.  Expressions
are parsed by recursive descent with conventional precedence
(pow > unary minus > mul/div > add/sub, binary operators left associative,
no implicit multiplication) and differentiated symbolically to any order.

Nodes are interned: structurally equal subtrees are the same object, so
repeated differentiation yields compact DAGs and evaluation memoizes shared
subtrees.  Angles are radians.  Evaluation accepts a float or an ndarray.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import DomainError, ParseError

__all__ = [
    "Expr", "Const", "Var", "Unary", "Binary", "Pow",
    "parse", "parse_curve", "differentiate", "evaluate", "to_source",
]

_FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")


class Expr:
    __slots__ = ()

    def __repr__(self):
        return f"<expr {to_source(self)}>"


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = float(value)


class Var(Expr):
    __slots__ = ()


class Unary(Expr):
    __slots__ = ("op", "arg")

    def __init__(self, op, arg):
        self.op = op
        self.arg = arg


class Binary(Expr):
    __slots__ = ("op", "lhs", "rhs")

    def __init__(self, op, lhs, rhs):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs


class Pow(Expr):
    """base ** exponent with a constant real exponent."""

    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = float(exponent)


# ---------------------------------------------------------------------------
# interning factories; keys use child identity, valid because pooled nodes
# are never collected

_POOL: dict = {}
_T = Var()


def const(value) -> Const:
    key = ("c", repr(float(value)))
    node = _POOL.get(key)
    if node is None:
        node = _POOL[key] = Const(value)
    return node


def var() -> Var:
    return _T


def unary(op, arg) -> Unary:
    key = ("u", op, id(arg))
    node = _POOL.get(key)
    if node is None:
        node = _POOL[key] = Unary(op, arg)
    return node


def binary(op, lhs, rhs) -> Binary:
    key = ("b", op, id(lhs), id(rhs))
    node = _POOL.get(key)
    if node is None:
        node = _POOL[key] = Binary(op, lhs, rhs)
    return node


def power(base, exponent) -> Pow:
    key = ("p", id(base), repr(float(exponent)))
    node = _POOL.get(key)
    if node is None:
        node = _POOL[key] = Pow(base, exponent)
    return node


# ---------------------------------------------------------------------------
# tokenizer

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER.match(text, i)
            if not m:
                raise ParseError("malformed number", i)
            tokens.append(("num", float(m.group()), i))
            i = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _IDENT.match(text, i)
            tokens.append(("ident", m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^(),":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}", tok[2])
        return tok

    # expr := term (('+'|'-') term)*
    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-":
            op = self.next()[0]
            node = binary(op, node, self.term())
        return node

    # term := factor (('*'|'/') factor)*
    def term(self):
        node = self.factor()
        while self.peek()[0] in "*/":
            op = self.next()[0]
            node = binary(op, node, self.factor())
        return node

    # factor := '-' factor | power      (pow binds tighter than unary minus)
    def factor(self):
        if self.peek()[0] == "-":
            self.next()
            return unary("neg", self.factor())
        return self.power()

    # power := atom ('^' factor)?       (right associative, constant exponent)
    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.next()
            off = self.peek()[2]
            exponent = self.factor()
            value = _const_value(exponent)
            if value is None:
                raise ParseError("exponent must be constant", off)
            return power(node, value)
        return node

    def atom(self):
        kind, value, off = self.next()
        if kind == "num":
            return const(value)
        if kind == "ident":
            if value == "t":
                if self.peek()[0] == "(":
                    raise ParseError("'t' is not a function", off)
                return var()
            if value in _FUNCTIONS:
                self.expect("(", "'(' after function name")
                arg = self.expr()
                self.expect(")", "')'")
                return unary(value, arg)
            raise ParseError(f"unknown identifier {value!r}", off)
        if kind == "(":
            node = self.expr()
            self.expect(")", "')'")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", off)
        raise ParseError(f"unexpected token {value!r}", off)


def _const_value(node):
    """Fold a parse subtree to a float, or None if it references t."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return None
    if isinstance(node, Unary):
        v = _const_value(node.arg)
        if v is None:
            return None
        if node.op == "neg":
            return -v
        return _apply_unary_scalar(node.op, v)
    if isinstance(node, Binary):
        a = _const_value(node.lhs)
        b = _const_value(node.rhs)
        if a is None or b is None:
            return None
        return _apply_binary_scalar(node.op, a, b)
    if isinstance(node, Pow):
        b = _const_value(node.base)
        return None if b is None else _pow_scalar(b, node.exponent)
    raise TypeError(node)


def parse(text: str) -> Expr:
    """Parse expression text into an AST; raises ParseError with offset."""
    parser = _Parser(text)
    node = parser.expr()
    kind, value, off = parser.peek()
    if kind != "end":
        raise ParseError(f"expected operator before {value!r}", off)
    return node


def parse_curve(text: str):
    """Parse 'x,y,z' (top-level commas) into a component Expr triple."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    if len(parts) != 3:
        raise ParseError(f"expected 3 comma-separated components, got {len(parts)}", 0)
    out = []
    for off, chunk in parts:
        try:
            out.append(parse(chunk))
        except ParseError as err:
            raise ParseError(str(err).rsplit(" (offset", 1)[0], err.offset + off) from None
    return tuple(out)


# ---------------------------------------------------------------------------
# differentiation; simplifying combinators keep the derivative DAGs small

def _is_const(node, value=None):
    return isinstance(node, Const) and (value is None or node.value == value)


def _neg(a):
    if _is_const(a):
        return const(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.arg
    return unary("neg", a)


def _add(a, b):
    if _is_const(a) and _is_const(b):
        return const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return binary("+", a, b)


def _sub(a, b):
    if _is_const(a) and _is_const(b):
        return const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    return binary("-", a, b)


def _mul(a, b):
    if _is_const(a) and _is_const(b):
        return const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return binary("*", a, b)


def _div(a, b):
    if _is_const(a, 0.0):
        return const(0.0)
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b) and b.value != 0.0:
        return const(a.value / b.value)
    return binary("/", a, b)


def _pow(a, p):
    if p == 0.0:
        return const(1.0)
    if p == 1.0:
        return a
    return power(a, p)


_DIFF: dict = {}


def differentiate(e: Expr, order: int = 1) -> Expr:
    """Exact derivative of e with respect to t, iterated `order` times."""
    for _ in range(order):
        e = _diff(e)
    return e


def _diff(e):
    node = _DIFF.get(e)
    if node is not None:
        return node
    if isinstance(e, Const):
        node = const(0.0)
    elif isinstance(e, Var):
        node = const(1.0)
    elif isinstance(e, Unary):
        du = _diff(e.arg)
        u = e.arg
        if e.op == "neg":
            node = _neg(du)
        elif e.op == "sin":
            node = _mul(unary("cos", u), du)
        elif e.op == "cos":
            node = _neg(_mul(unary("sin", u), du))
        elif e.op == "tan":
            sec2 = _add(const(1.0), _mul(unary("tan", u), unary("tan", u)))
            node = _mul(sec2, du)
        elif e.op == "exp":
            node = _mul(unary("exp", u), du)
        elif e.op == "log":
            node = _div(du, u)
        elif e.op == "sqrt":
            node = _div(du, _mul(const(2.0), unary("sqrt", u)))
        else:
            raise ValueError(f"unknown function {e.op!r}")
    elif isinstance(e, Binary):
        da, db = _diff(e.lhs), _diff(e.rhs)
        a, b = e.lhs, e.rhs
        if e.op == "+":
            node = _add(da, db)
        elif e.op == "-":
            node = _sub(da, db)
        elif e.op == "*":
            node = _add(_mul(da, b), _mul(a, db))
        else:
            node = _div(_sub(_mul(da, b), _mul(a, db)), _mul(b, b))
    elif isinstance(e, Pow):
        node = _mul(_mul(const(e.exponent), _pow(e.base, e.exponent - 1.0)),
                    _diff(e.base))
    else:
        raise TypeError(e)
    _DIFF[e] = node
    return node


# ---------------------------------------------------------------------------
# evaluation

def _apply_unary_scalar(op, x):
    try:
        if op == "sin":
            return math.sin(x)
        if op == "cos":
            return math.cos(x)
        if op == "tan":
            return math.tan(x)
        if op == "exp":
            return math.exp(x)
        if op == "log":
            if x <= 0.0:
                raise DomainError(f"log of non-positive value {x!r}")
            return math.log(x)
        if op == "sqrt":
            if x < 0.0:
                raise DomainError(f"sqrt of negative value {x!r}")
            return math.sqrt(x)
    except OverflowError:
        return math.inf
    raise ValueError(f"unknown function {op!r}")


def _apply_binary_scalar(op, a, b):
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b == 0.0:
        raise DomainError("division by zero")
    return a / b


def _pow_scalar(x, p):
    if p != round(p) and x < 0.0:
        raise DomainError(f"negative base {x!r} with non-integer exponent")
    if x == 0.0 and p < 0.0:
        raise DomainError("zero base with negative exponent")
    try:
        return math.pow(x, p)
    except OverflowError:
        negative = x < 0.0 and round(p) % 2 == 1
        return -math.inf if negative else math.inf


def _apply_unary_array(op, x):
    if op == "sin":
        return np.sin(x)
    if op == "cos":
        return np.cos(x)
    if op == "tan":
        return np.tan(x)
    if op == "exp":
        return np.exp(x)
    if op == "log":
        if np.any(x <= 0.0):
            raise DomainError("log of non-positive value")
        return np.log(x)
    if op == "sqrt":
        if np.any(x < 0.0):
            raise DomainError("sqrt of negative value")
        return np.sqrt(x)
    raise ValueError(f"unknown function {op!r}")


def _eval(e, t, memo, is_array):
    key = id(e)
    got = memo.get(key)
    if got is not None:
        return got
    if isinstance(e, Const):
        out = e.value
    elif isinstance(e, Var):
        out = t
    elif isinstance(e, Unary):
        x = _eval(e.arg, t, memo, is_array)
        if e.op == "neg":
            out = -x
        elif is_array:
            out = _apply_unary_array(e.op, x)
        else:
            out = _apply_unary_scalar(e.op, x)
    elif isinstance(e, Binary):
        a = _eval(e.lhs, t, memo, is_array)
        b = _eval(e.rhs, t, memo, is_array)
        if e.op == "+":
            out = a + b
        elif e.op == "-":
            out = a - b
        elif e.op == "*":
            out = a * b
        else:
            if np.any(b == 0.0) if is_array else b == 0.0:
                raise DomainError("division by zero")
            out = a / b
    elif isinstance(e, Pow):
        x = _eval(e.base, t, memo, is_array)
        p = e.exponent
        if is_array:
            if p != round(p) and np.any(x < 0.0):
                raise DomainError("negative base with non-integer exponent")
            if p < 0.0 and np.any(x == 0.0):
                raise DomainError("zero base with negative exponent")
            out = np.power(x, p)
        else:
            out = _pow_scalar(x, p)
    else:
        raise TypeError(e)
    memo[key] = out
    return out


def evaluate(e: Expr, t):
    """Evaluate e at t (float or ndarray).  Raises DomainError as needed."""
    if isinstance(t, np.ndarray):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = _eval(e, t, {}, True)
        if np.ndim(out) == 0:
            out = np.full(t.shape, float(out))
        return out
    return _eval(e, float(t), {}, False)


# ---------------------------------------------------------------------------
# printing; minimal parentheses, evaluation-faithful on reparse

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e):
    if isinstance(e, Const):
        return _PREC_NEG if e.value < 0.0 else _PREC_ATOM
    if isinstance(e, Var):
        return _PREC_ATOM
    if isinstance(e, Unary):
        return _PREC_NEG if e.op == "neg" else _PREC_ATOM
    if isinstance(e, Binary):
        return _PREC_ADD if e.op in "+-" else _PREC_MUL
    return _PREC_POW


def _wrap(e, minimum):
    s = to_source(e)
    return f"({s})" if _prec(e) < minimum else s


def _fmt_number(v):
    return str(int(v)) if v.is_integer() and abs(v) < 1e16 else repr(v)


def to_source(e: Expr) -> str:
    """Render e as parseable text; reparse evaluates identically."""
    if isinstance(e, Const):
        return _fmt_number(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Unary):
        if e.op == "neg":
            return "-" + _wrap(e.arg, _PREC_NEG)
        return f"{e.op}({to_source(e.arg)})"
    if isinstance(e, Binary):
        level = _prec(e)
        left = _wrap(e.lhs, level)
        # parenthesize an equal-precedence right operand: binary operators
        # associate left and float arithmetic is not associative
        right = _wrap(e.rhs, level + 1)
        return f"{left} {e.op} {right}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _PREC_ATOM)}^{_fmt_number(e.exponent)}"
    raise TypeError(e)
