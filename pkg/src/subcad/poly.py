"""Exact multivariate polynomials over the rationals.

Polynomials are stored recursively: a polynomial whose greatest variable is
``x_v`` is a tuple of coefficients in ``x_v`` (lowest degree first), each of
which is a polynomial in strictly smaller variables.  Variables are integer
levels ``1..n`` (``x_1`` smallest); level ``0`` marks a constant.  Names only
enter through :class:`VarOrder` at the parsing and printing boundary.

Sign conventions
----------------
``resultant(p, q)`` is the determinant of the Sylvester matrix with the rows
of ``p`` first.  ``psc_chain(p, q)[j]`` is the ``j``-th principal subresultant
coefficient taken in the same orientation, so ``psc_chain(p, q)[0]`` equals
``resultant(p, q)`` exactly.  ``discriminant(p)`` is
``(-1)**(d*(d-1)/2) * resultant(p, p') / lc(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Sequence, Union

from .errors import DegreeTooLow, ZeroPolynomial

Number = Union[int, Fraction]


def _num(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _div(a: Number, b: Number) -> Number:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _num(Fraction(a) / b)


@dataclass(frozen=True)
class VarOrder:
    """Variable names ordered smallest first: ``names[0]`` is ``x_1``."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("variable order must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    @classmethod
    def greatest_first(cls, names: Sequence[str]) -> "VarOrder":
        """Build from a Maple-style list such as ``[y, x]`` (``y`` main)."""
        return cls(tuple(reversed(tuple(names))))

    @property
    def n(self) -> int:
        return len(self.names)

    def level(self, name: str) -> int:
        return self.names.index(name) + 1

    def name(self, level: int) -> str:
        return self.names[level - 1]


class MultiPoly:
    """Immutable multivariate polynomial in recursive dense form."""

    __slots__ = ("var", "coeffs", "_hash")

    def __init__(self, var: int, coeffs: tuple):
        self.var = var
        self.coeffs = coeffs
        self._hash = None

    # -- construction -------------------------------------------------------

    @staticmethod
    def const(c: Number) -> "MultiPoly":
        c = _num(c)
        if c == 0:
            return ZERO
        if c == 1:
            return ONE
        return MultiPoly(0, (c,))

    @staticmethod
    def variable(v: int) -> "MultiPoly":
        return MultiPoly(v, (ZERO, ONE))

    @staticmethod
    def make(var: int, coeffs: Sequence["MultiPoly"]) -> "MultiPoly":
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        if not coeffs:
            return ZERO
        if len(coeffs) == 1:
            return coeffs[0]
        return MultiPoly(var, tuple(coeffs))

    @staticmethod
    def coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return MultiPoly.const(x)

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.var == 0 and self.coeffs[0] == 0

    @property
    def is_constant(self) -> bool:
        return self.var == 0

    @property
    def value(self) -> Number:
        if self.var:
            raise ValueError("not a constant polynomial")
        return self.coeffs[0]

    @property
    def mvar(self) -> int | None:
        """Level of the main variable, ``None`` for constants."""
        return self.var or None

    def degree(self, v: int | None = None) -> int:
        """Degree in ``x_v`` (default: the main variable); ``-1`` for zero."""
        if self.is_zero:
            return -1
        if v is None or v == self.var:
            return len(self.coeffs) - 1 if self.var else 0
        if v > self.var:
            return 0
        return max(c.degree(v) for c in self.coeffs)

    def total_degree(self) -> int:
        if self.var == 0:
            return 0 if not self.is_zero else -1
        return max(i + c.total_degree() for i, c in enumerate(self.coeffs) if not c.is_zero)

    def variables(self) -> set[int]:
        if self.var == 0:
            return set()
        out = {self.var}
        for c in self.coeffs:
            out |= c.variables()
        return out

    @property
    def lc(self) -> "MultiPoly":
        """Leading coefficient with respect to the main variable."""
        return self.coeffs[-1] if self.var else self

    def coeff(self, i: int) -> "MultiPoly":
        if self.var == 0:
            return self if i == 0 else ZERO
        return self.coeffs[i] if i < len(self.coeffs) else ZERO

    def coefficients(self, v: int) -> list["MultiPoly"]:
        """Coefficients in ``x_v`` (lowest first); ``x_v`` must be the main variable or absent."""
        if self.var == v:
            return list(self.coeffs)
        if self.var > v:
            raise ValueError("x_%d is not the main variable" % v)
        return [self]

    def base_lc(self) -> Number:
        p = self
        while p.var:
            p = p.coeffs[-1]
        return p.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = MultiPoly.coerce(other)
        if self.var == other.var:
            if self.var == 0:
                return MultiPoly.const(self.coeffs[0] + other.coeffs[0])
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = [x + y for x, y in zip(a, b)] + list(a[len(b):])
            return MultiPoly.make(self.var, out)
        if self.var < other.var:
            self, other = other, self
        cs = list(self.coeffs)
        cs[0] = cs[0] + other
        return MultiPoly(self.var, tuple(cs))

    __radd__ = __add__

    def __neg__(self):
        if self.var == 0:
            return MultiPoly.const(-self.coeffs[0])
        return MultiPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        return MultiPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = MultiPoly.coerce(other)
        if self.is_zero or other.is_zero:
            return ZERO
        if self.var == other.var:
            if self.var == 0:
                return MultiPoly.const(self.coeffs[0] * other.coeffs[0])
            a, b = self.coeffs, other.coeffs
            out = [ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x.is_zero:
                    continue
                for j, y in enumerate(b):
                    if not y.is_zero:
                        out[i + j] = out[i + j] + x * y
            return MultiPoly.make(self.var, out)
        if self.var < other.var:
            self, other = other, self
        return MultiPoly(self.var, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Number) -> "MultiPoly":
        if c == 0:
            return ZERO
        if self.var == 0:
            return MultiPoly.const(self.coeffs[0] * c)
        return MultiPoly(self.var, tuple(x.scale(c) for x in self.coeffs))

    def shift(self, v: int, k: int) -> "MultiPoly":
        """Multiply by ``x_v**k``; ``x_v`` must not be below the main variable."""
        if k == 0 or self.is_zero:
            return self
        if v == self.var:
            return MultiPoly(v, (ZERO,) * k + self.coeffs)
        return MultiPoly(v, (ZERO,) * k + (self,))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self.var == 0 and self.coeffs[0] == other
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self.coeffs))
        return self._hash

    def __repr__(self):
        return "MultiPoly(%s)" % format_poly(self)

    # -- calculus and substitution -----------------------------------------

    def diff(self, v: int | None = None) -> "MultiPoly":
        """Partial derivative with respect to ``x_v`` (default main variable)."""
        if v is None:
            v = self.var
        if self.var == 0 or v > self.var:
            return ZERO
        if v == self.var:
            return MultiPoly.make(v, [c.scale(i) for i, c in enumerate(self.coeffs)][1:])
        return MultiPoly.make(self.var, [c.diff(v) for c in self.coeffs])

    def subs(self, v: int, value: Number) -> "MultiPoly":
        """Substitute the rational ``value`` for ``x_v``."""
        if self.var < v:
            return self
        if self.var == v:
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc.scale(value) + c
            return acc
        return MultiPoly.make(self.var, [c.subs(v, value) for c in self.coeffs])

    def evaluate(self, values: Sequence[Number]) -> Number:
        """Evaluate at ``(x_1, ..., x_k) = values``; all present variables must be covered."""
        if self.var == 0:
            return self.coeffs[0]
        x = values[self.var - 1]
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c.evaluate(values)
        return _num(acc)

    def compose(self, v: int, q: "MultiPoly") -> "MultiPoly":
        """Substitute the polynomial ``q`` for ``x_v``."""
        if self.var < v:
            return self
        if self.var == v:
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * q + c
            return acc
        acc = ZERO
        x = MultiPoly.variable(self.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c.compose(v, q)
        return acc

    # -- distributed form ---------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], Number]]:
        """Nonzero terms as ``(exponents, coefficient)``; exponent tuples have length ``var``."""
        out: list[tuple[tuple[int, ...], Number]] = []
        self._collect({}, out, self.var)
        return out

    def _collect(self, prefix: dict, out: list, width: int):
        if self.var == 0:
            if self.coeffs[0] != 0:
                exps = [0] * width
                for k, e in prefix.items():
                    exps[k - 1] = e
                out.append((tuple(exps), self.coeffs[0]))
            return
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c.is_zero:
                c._collect({**prefix, self.var: i}, out, width)

    @staticmethod
    def from_terms(terms: Iterable[tuple[Sequence[int], Number]]) -> "MultiPoly":
        acc: dict[tuple[int, ...], Number] = {}
        for exps, c in terms:
            exps = tuple(exps)
            while exps and exps[-1] == 0:
                exps = exps[:-1]
            acc[exps] = acc.get(exps, 0) + c
        return _build({e: c for e, c in acc.items() if c != 0})

    def rename(self, mapping: dict[int, int]) -> "MultiPoly":
        """Relabel variables: ``x_v`` becomes ``x_mapping[v]``."""
        new_terms = []
        for exps, c in self.terms():
            width = max([mapping[i + 1] for i, e in enumerate(exps) if e] or [0])
            ne = [0] * width
            for i, e in enumerate(exps):
                if e:
                    ne[mapping[i + 1] - 1] += e
            new_terms.append((ne, c))
        return MultiPoly.from_terms(new_terms)

    # -- normalisation ------------------------------------------------------

    def numbers(self) -> list[Number]:
        if self.var == 0:
            return [self.coeffs[0]]
        out = []
        for c in self.coeffs:
            out.extend(c.numbers())
        return out

    def canonical(self) -> "MultiPoly":
        """Integer coefficients with unit content and positive leading base coefficient."""
        if self.is_zero:
            return ZERO
        nums = [Fraction(x) for x in self.numbers() if x != 0]
        den = reduce(lambda a, b: a * b // igcd(a, b), (x.denominator for x in nums), 1)
        num = reduce(igcd, (abs(x.numerator) for x in nums), 0)
        factor = Fraction(den, num)
        if self.base_lc() < 0:
            factor = -factor
        return self.scale(_num(factor)) if factor != 1 else self

    def sort_key(self):
        return (self.var, self.degree(), self.total_degree(), tuple(
            (e, Fraction(c)) for e, c in sorted(self.terms(), reverse=True)))


ZERO = MultiPoly(0, (0,))
ONE = MultiPoly(0, (1,))


def _build(d: dict[tuple[int, ...], Number]) -> MultiPoly:
    if not d:
        return ZERO
    var = max(len(e) for e in d)
    if var == 0:
        return MultiPoly.const(d.get((), 0))
    groups: dict[int, dict] = {}
    for e, c in d.items():
        k = e[var - 1] if len(e) == var else 0
        rest = e[: var - 1] if len(e) == var else e
        rest = tuple(rest)
        while rest and rest[-1] == 0:
            rest = rest[:-1]
        groups.setdefault(k, {})[rest] = c
    deg = max(groups)
    return MultiPoly.make(var, [_build(groups.get(i, {})) for i in range(deg + 1)])


def poly_from_coeffs(v: int, coeffs: Sequence[Number]) -> MultiPoly:
    """Univariate polynomial in ``x_v`` from numbers, lowest degree first."""
    return MultiPoly.make(v, [MultiPoly.const(c) for c in coeffs])


def univariate_coeffs(p: MultiPoly) -> list[Number]:
    """Numeric coefficients (lowest first) of a polynomial in at most one variable."""
    if p.var == 0:
        return [p.coeffs[0]] if not p.is_zero else []
    out = []
    for c in p.coeffs:
        if c.var:
            raise ValueError("polynomial is not univariate")
        out.append(c.coeffs[0])
    return out


# ---------------------------------------------------------------------------
# formatting


def format_poly(p: MultiPoly, names: Sequence[str] | VarOrder | None = None) -> str:
    """Render with ``^`` for powers; ``names`` lists variables smallest first."""
    if isinstance(names, VarOrder):
        names = names.names
    if p.is_zero:
        return "0"

    def name(i):
        if names is not None and i < len(names):
            return names[i]
        return "x%d" % (i + 1)

    pieces = []
    for exps, c in sorted(p.terms(), key=lambda t: _term_order(t[0]), reverse=True):
        mono = []
        for i in range(len(exps) - 1, -1, -1):
            e = exps[i]
            if e == 1:
                mono.append(name(i))
            elif e > 1:
                mono.append("%s^%d" % (name(i), e))
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = "*".join(mono)
        else:
            body = "%s*%s" % (mag, "*".join(mono))
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += sign + body
    return text


def _term_order(exps):
    return tuple(reversed(exps))


# ---------------------------------------------------------------------------
# division and gcd


def divexact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact quotient ``p / q``; raises ``ArithmeticError`` if ``q`` does not divide ``p``."""
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero:
        return ZERO
    if q.var == 0:
        c = q.coeffs[0]
        return p if c == 1 else p.scale(_div(1, c))
    if p.var < q.var:
        raise ArithmeticError("inexact polynomial division")
    if p.var > q.var:
        return MultiPoly(p.var, tuple(divexact(c, q) for c in p.coeffs))
    v, dq, lcq = q.var, q.degree(), q.lc
    r = p
    quot = [ZERO] * (p.degree() - dq + 1)
    while not r.is_zero and r.var == v and r.degree() >= dq:
        k = r.degree() - dq
        t = divexact(r.lc, lcq)
        quot[k] = quot[k] + t
        r = r - (q * t).shift(v, k)
    if not r.is_zero:
        raise ArithmeticError("inexact polynomial division")
    return MultiPoly.make(v, quot)


def prem(f: MultiPoly, g: MultiPoly, v: int) -> MultiPoly:
    """Pseudo-remainder of ``f`` by ``g`` in ``x_v`` (``x_v`` not below either main variable)."""
    dg = g.degree(v)
    if dg <= 0:
        return ZERO
    df = f.degree(v)
    if df < dg:
        return f
    lcg = g.lc
    r, e = f, df - dg + 1
    while not r.is_zero and r.var == v and r.degree() >= dg:
        k = r.degree() - dg
        r = r * lcg - (g * r.lc).shift(v, k)
        e -= 1
    return r * lcg ** e if e else r


def _lc_in(p: MultiPoly, v: int) -> MultiPoly:
    return p.lc if p.var == v else p


def content(p: MultiPoly) -> MultiPoly:
    """Gcd of the coefficients with respect to the main variable, canonically normalised."""
    if p.var == 0:
        return ONE if not p.is_zero else ZERO
    g = ZERO
    for c in p.coeffs:
        if not c.is_zero:
            g = gcd(g, c)
            if g == ONE:
                break
    return g


def content_primpart(p: MultiPoly, v: int | None = None) -> tuple[MultiPoly, MultiPoly]:
    """Split ``p = content * primitive`` with respect to ``x_v`` (default: main variable).

    The primitive part has integer coefficients, unit content and a positive
    leading base coefficient; the rational unit goes into the content.
    """
    if p.is_zero:
        raise ZeroPolynomial("content of the zero polynomial")
    if v is not None and v != p.var:
        raise ValueError("x_%d is not the main variable" % v)
    if p.var == 0:
        return p, ONE
    c = content(p)
    prim = divexact(p, c).canonical()
    return divexact(p, prim), prim


def primitive_part(p: MultiPoly) -> MultiPoly:
    return content_primpart(p)[1]


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor over Q, canonically normalised (``gcd(0, 0) = 0``)."""
    if p.is_zero:
        return q.canonical() if q.var else (ZERO if q.is_zero else ONE)
    if q.is_zero:
        return p.canonical() if p.var else ONE
    if p.var == 0 or q.var == 0:
        return ONE
    if p.var != q.var:
        if p.var < q.var:
            p, q = q, p
        return gcd(content(p), q)
    cp, pp = content_primpart(p)
    cq, qq = content_primpart(q)
    c = gcd(cp, cq)
    if pp == qq:
        return (c * pp).canonical()
    if pp.degree() < qq.degree():
        pp, qq = qq, pp
    prs, _ = subresultant_prs(pp, qq, pp.var)
    last = prs[-1]
    if last.degree(pp.var) <= 0:
        return c
    return (c * primitive_part(last)).canonical()


def lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return divexact(p * q, gcd(p, q)).canonical()


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Squarefree part of a polynomial that is primitive in its main variable."""
    if p.var == 0:
        return ONE
    g = gcd(p, p.diff())
    return divexact(p, g).canonical() if g.var else p.canonical()


def squarefree_factors(p: MultiPoly) -> list[MultiPoly]:
    """Coprime squarefree pieces of a primitive ``p``, one per multiplicity present.

    ``p`` is a constant times the product of ``pieces[i] ** m_i``.
    """
    out = []
    while p.var:
        g = gcd(p, p.diff())
        s = divexact(p, g)
        h = gcd(s, g) if g.var else ONE
        once = divexact(s, h) if h.var else s
        if once.var:
            out.append(once.canonical())
        p = g
    return out


# ---------------------------------------------------------------------------
# subresultants


def subresultant_prs(f: MultiPoly, g: MultiPoly, v: int):
    """Subresultant PRS of ``f`` and ``g`` in ``x_v`` with its scalar subresultants.

    Requires ``deg_v f >= deg_v g``.  Returns ``(R, S)`` where ``R[0] = f``,
    ``R[1] = g`` and ``S[i]`` is the principal subresultant coefficient whose
    index is ``deg_v R[i]`` (``S[0] = 1`` by convention).
    """
    n, m = f.degree(v), g.degree(v)
    if n < m:
        raise ValueError("subresultant_prs expects deg f >= deg g")
    R = [f, g]
    if g.is_zero:
        return [f], [ONE]
    d = n - m
    h = prem(f, g, v)
    if (d + 1) % 2:
        h = -h
    lc = _lc_in(g, v)
    c = lc ** d
    S = [ONE, c]
    c = -c
    while not h.is_zero and m > 0:
        k = h.degree(v)
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = divexact(prem(f, g, v), b) if k > 0 else ZERO
        lc = _lc_in(g, v)
        if d > 1:
            c = divexact((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        S.append(-c)
    return R, S


def _main_pair(p: MultiPoly, q: MultiPoly, v: int):
    """Move ``x_v`` to the top so it is the main variable of the pair."""
    top = max(p.var, q.var)
    if v >= top:
        return p, q, None
    mapping = {i: (i if i < v else (top if i == v else i - 1)) for i in range(1, top + 1)}
    inverse = {b: a for a, b in mapping.items()}
    return p.rename(mapping), q.rename(mapping), (top, inverse)


def resultant(p: MultiPoly, q: MultiPoly, v: int) -> MultiPoly:
    """Resultant of ``p`` and ``q`` with respect to ``x_v``."""
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant with the zero polynomial")
    n, m = p.degree(v), q.degree(v)
    if n == 0 and m == 0:
        raise DegreeTooLow("x_%d occurs in neither polynomial" % v)
    if m == 0:
        return q ** n
    if n == 0:
        return p ** m
    p2, q2, back = _main_pair(p, q, v)
    w = v if back is None else back[0]
    if n < m:
        r = _prs_resultant(q2, p2, w)
        if (n * m) % 2:
            r = -r
    else:
        r = _prs_resultant(p2, q2, w)
    return r.rename(back[1]) if back is not None else r


def _prs_resultant(f, g, v):
    R, S = subresultant_prs(f, g, v)
    if R[-1].degree(v) > 0:
        return ZERO
    return S[-1]


def psc_chain(p: MultiPoly, q: MultiPoly, v: int) -> list[MultiPoly]:
    """Principal subresultant coefficients ``psc_0 .. psc_{min(deg p, deg q) - 1}``.

    Orientation matches :func:`resultant`, so entry 0 is the resultant itself.
    """
    n, m = p.degree(v), q.degree(v)
    if n < 1 or m < 1:
        raise DegreeTooLow("psc_chain needs positive degree in both polynomials")
    p2, q2, back = _main_pair(p, q, v)
    w = v if back is None else back[0]
    swap = n < m
    R, S = subresultant_prs(q2, p2, w) if swap else subresultant_prs(p2, q2, w)
    k = min(n, m)
    out = [ZERO] * k
    for poly, s in zip(R[1:], S[1:]):
        j = poly.degree(w) if not poly.is_zero else -1
        if 0 <= j < k:
            if swap and ((n - j) * (m - j)) % 2:
                s = -s
            out[j] = s.rename(back[1]) if back is not None else s
    return out


def discriminant(p: MultiPoly, v: int | None = None) -> MultiPoly:
    if v is None:
        v = p.var
    d = p.degree(v)
    if d < 1:
        raise DegreeTooLow("discriminant needs positive degree")
    if d == 1:
        return ONE
    r = resultant(p, p.diff(v), v)
    p2, _, back = _main_pair(p, ONE, v)
    lc = p2.lc
    if back is not None:
        lc = lc.rename(back[1])
    r = divexact(r, lc)
    return -r if (d * (d - 1) // 2) % 2 else r


def sylvester_resultant(p: MultiPoly, q: MultiPoly, v: int) -> MultiPoly:
    """Sylvester-determinant resultant by cofactor expansion (small-degree oracle)."""
    return _sylvester_minor(p, q, v, 0)


def sylvester_psc(p: MultiPoly, q: MultiPoly, v: int, j: int) -> MultiPoly:
    """``j``-th principal subresultant coefficient from its defining determinant."""
    return _sylvester_minor(p, q, v, j)


def _sylvester_minor(p, q, v, j):
    n, m = p.degree(v), q.degree(v)
    pc = _coeff_list(p, v, n)
    qc = _coeff_list(q, v, m)
    size = n + m - 2 * j
    rows = []
    for i in range(m - j):
        row = [ZERO] * (n + m - j)
        for k, c in enumerate(reversed(pc)):
            row[i + k] = c
        rows.append(row[:size])
    for i in range(n - j):
        row = [ZERO] * (n + m - j)
        for k, c in enumerate(reversed(qc)):
            row[i + k] = c
        rows.append(row[:size])
    return _det(rows)


def _coeff_list(p, v, d):
    out = []
    for i in range(d + 1):
        out.append(_coeff_in(p, v, i))
    return out


def _coeff_in(p: MultiPoly, v: int, i: int) -> MultiPoly:
    """Coefficient of ``x_v**i`` in ``p`` for any variable ``x_v``."""
    if p.var < v:
        return p if i == 0 else ZERO
    if p.var == v:
        return p.coeff(i)
    return MultiPoly.make(p.var, [_coeff_in(c, v, i) for c in p.coeffs])


def coeffs_in(p: MultiPoly, v: int) -> list[MultiPoly]:
    """All coefficients of ``p`` in ``x_v`` (lowest first), for any variable ``x_v``."""
    return [_coeff_in(p, v, i) for i in range(p.degree(v) + 1)]


def _det(rows):
    size = len(rows)
    if size == 0:
        return ONE
    if size == 1:
        return rows[0][0]
    total = ZERO
    for col in range(size):
        a = rows[0][col]
        if a.is_zero:
            continue
        minor = [r[:col] + r[col + 1:] for r in rows[1:]]
        term = a * _det(minor)
        total = total - term if col % 2 else total + term
    return total


# ---------------------------------------------------------------------------
# squarefree bases


def finest_squarefree_basis(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Pairwise coprime, squarefree, primitive, nonconstant polynomials by gcd splitting.

    Every input equals a rational constant times a product of powers of the
    returned elements.  Output is sorted by :meth:`MultiPoly.sort_key`.
    """
    pieces: dict[int, list[MultiPoly]] = {}
    stack = [p for p in polys if not p.is_constant]
    while stack:
        p = stack.pop()
        if p.is_constant:
            continue
        c, pp = content_primpart(p)
        if not c.is_constant:
            stack.append(c)
        pieces.setdefault(pp.var, []).extend(squarefree_factors(pp))
    out: list[MultiPoly] = []
    for var in sorted(pieces):
        basis: list[MultiPoly] = []
        for q in pieces[var]:
            basis = _refine(basis, q)
        out.extend(basis)
    out = list({b.canonical() for b in out})
    out.sort(key=MultiPoly.sort_key)
    return out


def _refine(basis: list[MultiPoly], q: MultiPoly) -> list[MultiPoly]:
    out: list[MultiPoly] = []
    for b in basis:
        if q.is_constant:
            out.append(b)
            continue
        g = gcd(b, q)
        if g.is_constant:
            out.append(b)
            continue
        out.append(g)
        rest = divexact(b, g)
        if not rest.is_constant:
            out.append(rest.canonical())
        q = divexact(q, g)
    if not q.is_constant:
        out.append(q.canonical())
    return out
