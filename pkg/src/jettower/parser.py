"""A small expression language for classes, scalars and jet polynomials.

Grammar (loosest binding first)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | IDENT | '(' expr ')'

``NUMBER`` is an integer or a rational literal such as ``11/3``; there is no
division operator. An identifier may carry trailing primes or a braced
order (``z''``, ``z{4}``), which only the jet-polynomial universe accepts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from .errors import DomainError, ParseError

PARAMS = ("r", "d", "chi", "x", "y", "z", "eps")
GENERATORS = ("b", "a") + tuple(f"a{j}" for j in range(1, 10))
CHOW_NAMES = frozenset(PARAMS + GENERATORS)


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, Add, Sub, Mul, Pow]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:'+|\{\d+\})?)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    data = text.encode("utf-8")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(data, text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), _byte_offset(data, text, pos)))
        pos = m.end()
    tokens.append(("end", "", len(data)))
    return tokens


def _byte_offset(data: bytes, text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, accept: Callable[[str], bool]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.accept = accept

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, off = self.take()
        if text != value:
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", off)

    def parse(self) -> Expr:
        e = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", off)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            e = Mul(e, self.unary())
        return e

    def unary(self) -> Expr:
        kind, text, _ = self.peek()
        if kind == "op" and text in ("-", "+"):
            self.take()
            inner = self.unary()
            return Neg(inner) if text == "-" else inner
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, text, off = self.take()
            if kind == "op" and text == "-":
                raise ParseError("negative exponent", off)
            if kind != "num" or "/" in text:
                raise ParseError("exponent must be a nonnegative integer literal", off)
            return Pow(base, int(text))
        return base

    def atom(self) -> Expr:
        kind, text, off = self.take()
        if kind == "num":
            return Num(Fraction(text))
        if kind == "ident":
            if not self.accept(text):
                raise ParseError(f"unknown identifier {text!r}", off)
            return Var(text)
        if (kind, text) == ("op", "("):
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"expected a number, identifier or '(', found {found}", off)


def parse(text: str, accept: Callable[[str], bool] | None = None) -> Expr:
    """Parse ``text``; identifiers must satisfy ``accept`` (default: class names)."""
    return _Parser(text, accept or CHOW_NAMES.__contains__).parse()


def render(e: Expr) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{render(e.operand)})"
    if isinstance(e, Pow):
        base = render(e.base)
        return f"({base})^{e.exponent}" if isinstance(e.base, Pow) else f"{base}^{e.exponent}"
    op = {Add: "+", Sub: "-", Mul: "*"}[type(e)]
    return f"({render(e.left)} {op} {render(e.right)})"


def evaluate(e: Expr, env: Mapping[str, object], number=lambda q: q):
    """Fold the tree with Python operators; ``number`` lifts literals."""
    if isinstance(e, Num):
        return number(e.value)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Neg):
        return -evaluate(e.operand, env, number)
    if isinstance(e, Pow):
        return evaluate(e.base, env, number) ** e.exponent
    left = evaluate(e.left, env, number)
    right = evaluate(e.right, env, number)
    if isinstance(e, Add):
        return left + right
    if isinstance(e, Sub):
        return left - right
    return left * right


def identifiers(e: Expr) -> set[str]:
    if isinstance(e, Num):
        return set()
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, (Neg,)):
        return identifiers(e.operand)
    if isinstance(e, Pow):
        return identifiers(e.base)
    return identifiers(e.left) | identifiers(e.right)


def _norm_number(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def eval_class(e: Expr, ctx, level: int | None = None):
    """Evaluate an expression to a ChowClass on ``level`` (default: context depth)."""
    from .chow import generator_names
    from .scalars import ParamScalar

    level = ctx.depth if level is None else level
    known = set(generator_names(level))
    for name in identifiers(e):
        if name in GENERATORS and name not in known:
            raise DomainError(f"generator {name!r} is above level {level}")
    env = {p: ctx.scalar(ParamScalar.var(p), level) for p in PARAMS}
    env.update(ctx.gens(level))
    return evaluate(e, env, lambda q: ctx.scalar(_norm_number(q), level))


def eval_scalar(e: Expr):
    """Evaluate an expression with no generators to a ParamScalar."""
    from .scalars import ParamScalar

    gens = identifiers(e) & set(GENERATORS)
    if gens:
        raise DomainError(f"generators {sorted(gens)} in a scalar expression")
    env = {p: ParamScalar.var(p) for p in PARAMS}
    return evaluate(e, env, lambda q: ParamScalar(_norm_number(q)))


def parse_scalar(text: str):
    return eval_scalar(parse(text, frozenset(PARAMS).__contains__))


def parse_class(text: str, ctx, level: int | None = None):
    return eval_class(parse(text), ctx, level)
