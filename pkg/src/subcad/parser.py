"""Recursive-descent parser for polynomials, variable orders and problem lists.

Grammar::

    problem := expr | '[' item (',' item)* ']'
    item    := expr | '[' (expr (',' expr)*)? ']'   (only as the 2nd of exactly two items)
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*           ('/' only by a nonzero constant)
    unary   := ('+' | '-') unary | power
    power   := atom (('^' | '**') INT)?
    atom    := NUMBER | NAME | '(' expr ')'

Variable orders are written greatest first, as in ``[y,x]`` (``y`` is the
main variable), and converted here to the smallest-first :class:`VarOrder`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedEC, ParseError, UnknownVariable
from .poly import MultiPoly, VarOrder
from .projection import ECInput

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),\[\]]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character %r" % text[pos], pos)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        out.append(Token(kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, order: VarOrder | None):
        self.toks = tokenize(text)
        self.i = 0
        self.order = order

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self, text: str | None = None) -> Token:
        t = self.tok
        if text is not None and t.text != text:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError("expected %r, found %s" % (text, found), t.pos)
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def finish(self) -> None:
        if self.tok.kind != "end":
            raise ParseError("unexpected %r" % self.tok.text, self.tok.pos)

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.at("+") or self.at("-"):
            sign = self.take().text
            rhs = self.term()
            acc = acc + rhs if sign == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant or rhs.is_zero:
                    raise ParseError("division only by a nonzero constant", op.pos)
                acc = acc.scale(Fraction(1) / Fraction(rhs.value))
        return acc

    def unary(self) -> MultiPoly:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.at("^") or self.at("**"):
            self.take()
            t = self.tok
            if t.kind != "num" or "." in t.text:
                raise ParseError("exponent must be a nonnegative integer", t.pos)
            self.take()
            base = base ** int(t.text)
        return base

    def atom(self) -> MultiPoly:
        t = self.tok
        if t.kind == "num":
            self.take()
            return MultiPoly.const(Fraction(t.text))
        if t.kind == "name":
            self.take()
            if self.order is None or t.text not in self.order.names:
                raise UnknownVariable("unknown variable %r" % t.text, t.pos)
            return MultiPoly.variable(self.order.level(t.text))
        if self.at("("):
            self.take()
            e = self.expr()
            self.take(")")
            return e
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError("expected a number, variable or '(', found %s" % found, t.pos)

    def item(self):
        if self.at("["):
            start = self.take().pos
            if self.at("]"):
                self.take()
                return start, []
            items = [self.expr()]
            while self.at(","):
                self.take()
                items.append(self.expr())
            self.take("]")
            return start, items
        return None, self.expr()


def parse_poly(text: str, order: VarOrder) -> MultiPoly:
    p = _Parser(text, order)
    e = p.expr()
    p.finish()
    return e


def parse_order(text: str) -> VarOrder:
    """Order written greatest first, e.g. ``[y,x]``; returned smallest first."""
    body = text.strip()
    if body.startswith("["):
        if not body.endswith("]"):
            raise ParseError("unterminated variable list", len(text))
        body = body[1:-1]
    names = [s.strip() for s in body.split(",")]
    for nm in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
            raise ParseError("bad variable name %r" % nm, text.find(nm) if nm else 0)
    if len(set(names)) != len(names):
        raise ParseError("repeated variable in order")
    return VarOrder.greatest_first(names)


def format_order(order: VarOrder) -> str:
    return "[" + ",".join(reversed(order.names)) + "]"


def parse_input(text: str, order: VarOrder):
    """A polynomial, a list of polynomials, or ``[f, [g1, ...]]`` (an :class:`ECInput`)."""
    p = _Parser(text, order)
    if not p.at("["):
        e = p.expr()
        p.finish()
        return (e,)
    p.take("[")
    entries = []
    nested = []
    while True:
        start, item = p.item()
        if start is not None:
            nested.append((len(entries), start))
        entries.append(item)
        if p.at(","):
            p.take()
            continue
        break
    p.take("]")
    p.finish()
    if not nested:
        return tuple(entries)
    if len(entries) != 2 or nested != [(1, nested[0][1])]:
        raise MalformedEC("equational form is [f, [g1, ..., gk]]", nested[0][1])
    if isinstance(entries[0], list):
        raise MalformedEC("the constraint must be a single polynomial", 0)
    return ECInput(entries[0], tuple(entries[1]))


COMMANDS = ("full", "lcad", "vcad", "eccad", "lvcad", "dist")
OUTPUTS = ("count", "records", "piecewise", "dist")


@dataclass(frozen=True)
class ProblemSpec:
    data: tuple | ECInput
    order: VarOrder
    command: str = "full"
    layers: int | None = None
    method: str = "mccallum"
    failure: str = "warn"
    output: str = "count"

    @property
    def polys(self) -> tuple[MultiPoly, ...]:
        return self.data.polys if isinstance(self.data, ECInput) else tuple(self.data)


def parse_problem(text: str, order_text: str, command: str = "full", layers: int | None = None,
                  method: str = "mccallum", failure: str = "warn",
                  output: str = "count") -> ProblemSpec:
    """Validate a whole request; raises :class:`ParseError` subclasses on bad input."""
    order = parse_order(order_text)
    data = parse_input(text, order)
    if command not in COMMANDS:
        raise ParseError("unknown command %r" % command)
    if output not in OUTPUTS:
        raise ParseError("unknown output mode %r" % output)
    if method not in ("collins", "mccallum"):
        raise ParseError("unknown method %r" % method)
    if failure not in ("warn", "err"):
        raise ParseError("unknown failure policy %r" % failure)
    if command in ("vcad", "eccad", "lvcad") and not isinstance(data, ECInput):
        raise MalformedEC("command %s needs input of the form [f, [g1, ...]]" % command, 0)
    if command in ("lcad", "lvcad") and layers is None:
        raise ParseError("command %s needs a layer count" % command)
    if layers is not None and not 1 <= layers <= order.n + 1:
        raise ParseError("layers must lie in 1..%d" % (order.n + 1))
    if any(p.is_zero for p in (data.polys if isinstance(data, ECInput) else data)):
        raise ParseError("zero polynomial in input")
    return ProblemSpec(data, order, command, layers, method, failure, output)
