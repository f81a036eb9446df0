"""Recursive-descent parser and evaluator for the scene expression language.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := number | ident | ident '(' expr ')' | '(' expr ')'

``^`` is right-associative and binds tighter than unary minus, so ``-s^2``
is ``-(s^2)`` and ``2^-1`` is allowed. Identifiers are the variables
``s``, ``t``, ``w``, the constant ``pi`` and the functions in
:data:`FUNCTIONS`. Implicit multiplication is rejected.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import DomainError, ExprSyntaxError, UnknownIdentifierError
from . import dual
from .dual import Dual2

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "FUNCTIONS",
    "VARIABLES",
    "parse",
    "render",
    "evaluate",
    "eval_expr",
    "eval_dual",
    "free_variables",
]

VARIABLES = frozenset({"s", "t", "w"})

FUNCTIONS = {
    "sin": dual.sin,
    "cos": dual.cos,
    "tan": dual.tan,
    "exp": dual.exp,
    "log": dual.log,
    "sqrt": dual.sqrt,
    "sinh": dual.sinh,
    "cosh": dual.cosh,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
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


Expr = Union[Num, Var, Neg, BinOp, Call]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", _byte_offset(text, i), text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if tok == "−":
                tok = "-"
            toks.append(_Tok(kind, tok, i))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, variables: frozenset[str]):
        self.text = text
        self.variables = variables
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None, cls=ExprSyntaxError):
        tok = tok or self.tok
        return cls(msg, _byte_offset(self.text, tok.pos), self.text)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            nxt = self.tok
            if nxt.kind in ("ident", "num") or (nxt.kind == "op" and nxt.text == "("):
                raise self.error("implicit multiplication is not allowed; use '*'", nxt)
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            name = tok.text
            if self.tok.kind == "op" and self.tok.text == "(":
                if name not in FUNCTIONS:
                    raise self.error(f"unknown function {name!r}", tok, UnknownIdentifierError)
                self.i += 1
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            if name == "pi":
                return Num(math.pi)
            if name in FUNCTIONS:
                raise self.error(f"function {name!r} requires an argument", tok)
            if name not in self.variables:
                raise self.error(f"unknown identifier {name!r}", tok, UnknownIdentifierError)
            return Var(name)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse(text: str, variables: Iterable[str] = VARIABLES) -> Expr:
    """Parse ``text`` into an AST, admitting only the given variable names."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0, text or "")
    return _Parser(text, frozenset(variables)).parse()


def render(e: Expr) -> str:
    """Render an AST back to text that parses to an equivalent tree."""
    if isinstance(e, Num):
        text = repr(float(e.value))
        return f"({text})" if e.value < 0 or text.startswith("-") else text
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{render(e.operand)})"
    if isinstance(e, BinOp):
        return f"({render(e.left)} {e.op} {render(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({render(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_variables(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Neg):
        return free_variables(e.operand)
    if isinstance(e, BinOp):
        return free_variables(e.left) | free_variables(e.right)
    if isinstance(e, Call):
        return free_variables(e.arg)
    return set()


def evaluate(e: Expr, env: dict):
    """Evaluate over any number type (float or nested :class:`Dual2`)."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise DomainError(f"variable {e.name!r} is unbound") from None
    if isinstance(e, BinOp):
        a = evaluate(e.left, env)
        b = evaluate(e.right, env)
        op = e.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if dual.real(b) == 0.0:
                raise DomainError("division by zero")
            return a / b
        return dual.power(a, b)
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    if isinstance(e, Call):
        return FUNCTIONS[e.func](evaluate(e.arg, env))
    raise TypeError(f"not an expression node: {e!r}")


def _check(result):
    r = dual.real(result)
    if not math.isfinite(r):
        raise DomainError("expression evaluated to a non-finite value")
    return result


def eval_expr(e: Expr, s: float = 0.0, t: float = 0.0, w: float = 0.0) -> float:
    """Plain evaluation at a point."""
    return float(_check(evaluate(e, {"s": s, "t": t, "w": w})))


def eval_dual(e: Expr, wrt: str, s: float = 0.0, t: float = 0.0, w: float = 0.0) -> Dual2:
    """Value, first and second derivative with respect to ``wrt``."""
    if wrt not in VARIABLES:
        raise ValueError(f"cannot differentiate with respect to {wrt!r}")
    env = {"s": s, "t": t, "w": w}
    env[wrt] = Dual2(env[wrt], 1.0, 0.0)
    out = _check(evaluate(e, env))
    if not isinstance(out, Dual2):
        return Dual2(float(out), 0.0, 0.0)
    return Dual2(float(out.value), float(out.d1), float(out.d2))
