"""A small expression language for profile curves and charts.

Grammar (lowest to highest precedence)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' unary)?          # right-associative
    atom     := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Names ``u`` and ``v`` are the chart variables, ``pi`` and ``e`` are constants
and every other bare name is a parameter bound at evaluation time.

Evaluation works on plain floats and on :mod:`secondform.jets` jets through
the same code path, so ``eval_jet`` is exact truncated-Taylor propagation.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import jets
from .jets import BiJet3, Jet3, _Jet

FUNCTIONS = frozenset(
    ["sin", "cos", "tan", "sinh", "cosh", "tanh", "asinh", "exp", "ln", "sqrt", "abs"]
)
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLES = frozenset(["u", "v"])


class ExprError(ValueError):
    """Base class for expression-language errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class ExprDomainError(ExprError):
    """A function was evaluated outside its domain (sqrt/ln of x <= 0, ...)."""


class UnboundParameterError(ExprError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound parameter {name!r}")


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Const, Param, Neg, BinOp, Call]


# -- tokenizer / parser ---------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _byte_offset(text: str, char_offset: int) -> int:
    return len(text[:char_offset].encode("utf-8"))


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos), text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), _byte_offset(text, start)))
        pos = m.end()
    tokens.append(("end", "", _byte_offset(text, n)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(message, tok[2], self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != value:
            if value == ")":
                self.error("unbalanced parentheses: expected ')'")
            self.error(f"expected {value!r}")
        return self.take()

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            self.error("empty input")
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[1] == ")":
                self.error("unbalanced parentheses: unexpected ')'")
            self.error(f"unexpected token {tok[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        tok = self.peek()
        kind, value, _ = tok
        if kind == "num":
            self.take()
            return Num(float(value))
        if kind == "name":
            self.take()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "(":
                if value not in FUNCTIONS:
                    self.error(f"unknown function {value!r}", tok)
                self.take()
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            if value in FUNCTIONS:
                self.error(f"function {value!r} requires an argument", nxt)
            if value in VARIABLES:
                return Var(value)
            if value in CONSTANTS:
                return Const(value)
            return Param(value)
        if kind == "op" and value == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "end":
            self.error("unexpected end of input")
        if value == ")":
            self.error("unbalanced parentheses: unexpected ')'")
        self.error(f"unexpected token {value!r}")


def parse(text: str) -> Expr:
    """Parse ``text`` into an :data:`Expr`.

    Raises
    ------
    ExprSyntaxError
        With ``offset`` set to the UTF-8 byte offset of the offending token.
    """
    return _Parser(text).parse()


# -- printing -------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    return 5


def _fmt_num(x: float) -> str:
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def to_text(node: Expr) -> str:
    """Render with the minimum parentheses needed to parse back to ``node``."""
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, (Var, Const, Param)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        return f"-({inner})" if _prec(node.operand) < 3 else f"-{inner}"
    p = _PREC[node.op]
    left, right = to_text(node.left), to_text(node.right)
    if node.op == "^":
        if _prec(node.left) <= 4:
            left = f"({left})"
        if _prec(node.right) < 3:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def parameters(node: Expr) -> set[str]:
    """Names of all parameters referenced by ``node``."""
    if isinstance(node, Param):
        return {node.name}
    if isinstance(node, Neg):
        return parameters(node.operand)
    if isinstance(node, Call):
        return parameters(node.arg)
    if isinstance(node, BinOp):
        return parameters(node.left) | parameters(node.right)
    return set()


# -- evaluation -------------------------------------------------------------------

def _is_number(x) -> bool:
    return isinstance(x, (int, float))


def _integer_exponent(b):
    if _is_number(b):
        return int(b) if float(b).is_integer() else None
    if b.is_constant() and b.value.is_integer():
        return int(b.value)
    return None


def _apply(func: str, x):
    val = x if _is_number(x) else x.value
    if func in ("sqrt", "ln") and not val > 0:
        raise ExprDomainError(f"{func} of non-positive value {val!r}")
    if func == "abs" and val == 0 and not _is_number(x):
        raise ExprDomainError("abs is not differentiable at 0")
    if func == "tan" and math.cos(val) == 0:
        raise ExprDomainError("tan at a pole")
    try:
        if _is_number(x):
            return jets.DERIVATIVE_STACKS[func](val)[0]
        return jets.apply(func, x)
    except (OverflowError, ValueError) as exc:
        raise ExprDomainError(f"{func}({val!r}): {exc}") from None


def _power(a, b):
    n = _integer_exponent(b)
    if n is not None:
        if _is_number(a):
            if a == 0 and n < 0:
                raise ExprDomainError("zero to a negative power")
            return float(a) ** n
        if a.value == 0 and n < 0:
            raise ExprDomainError("zero to a negative power")
        return a.ipow(n)
    base = a if _is_number(a) else a.value
    if not base > 0:
        raise ExprDomainError(f"non-integer power of non-positive base {base!r}")
    if _is_number(a) and _is_number(b):
        return math.exp(b * math.log(a))
    if _is_number(a):
        return _apply("exp", b * math.log(a))
    return _apply("exp", b * _apply("ln", a))


def evaluate(node: Expr, env: Mapping[str, object], params: Mapping[str, float] | None = None):
    """Evaluate ``node`` with ``env`` binding ``u``/``v`` to floats or jets."""
    params = params or {}

    def ev(n):
        if isinstance(n, Num):
            return n.value
        if isinstance(n, Var):
            try:
                return env[n.name]
            except KeyError:
                raise UnboundParameterError(n.name) from None
        if isinstance(n, Const):
            return CONSTANTS[n.name]
        if isinstance(n, Param):
            try:
                return float(params[n.name])
            except KeyError:
                raise UnboundParameterError(n.name) from None
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Call):
            return _apply(n.func, ev(n.arg))
        a, b = ev(n.left), ev(n.right)
        if n.op == "+":
            return a + b
        if n.op == "-":
            return a - b
        if n.op == "*":
            return a * b
        if n.op == "/":
            bval = b if _is_number(b) else b.value
            if bval == 0:
                raise ExprDomainError("division by zero")
            return a / b
        return _power(a, b)

    return ev(node)


def check_bound(node: Expr, params: Mapping[str, float]) -> None:
    missing = parameters(node) - set(params)
    if missing:
        raise UnboundParameterError(sorted(missing)[0])


def eval_float(node: Expr, u: float, params: Mapping[str, float] | None = None, v: float = 0.0) -> float:
    return float(evaluate(node, {"u": float(u), "v": float(v)}, params))


def eval_jet(node: Expr, u: Jet3, params: Mapping[str, float] | None = None) -> Jet3:
    """Propagate a :class:`Jet3` in ``u`` through ``node``."""
    params = params or {}
    check_bound(node, params)
    out = evaluate(node, {"u": u, "v": Jet3.constant(0.0, u.order)}, params)
    if _is_number(out):
        return Jet3.constant(float(out), u.order)
    return out


def eval_bijet(node: Expr, u: float, v: float, params: Mapping[str, float] | None = None) -> BiJet3:
    """Evaluate ``node`` as a :class:`BiJet3` at ``(u, v)``."""
    params = params or {}
    check_bound(node, params)
    env = {"u": BiJet3.variable(u, v, 0), "v": BiJet3.variable(u, v, 1)}
    out = evaluate(node, env, params)
    if isinstance(out, _Jet):
        return out
    return BiJet3.constant(float(out))
