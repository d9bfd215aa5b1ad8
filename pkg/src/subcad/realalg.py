"""Real root isolation and exact computation with real algebraic numbers.

A real algebraic number is a squarefree integer polynomial together with a
rational isolating interval.  Sample points are tuples of such numbers, one
per coordinate; no number-field towers are built.  Exact decisions at
algebraic points go through subresultant gcds specialised at the point:
``Q(a_1, .., a_k) = 0`` iff ``a_k`` is a root of ``gcd(m_k, Q(a_1, .., a_{k-1}, y))``
where ``m_k`` defines ``a_k``, and the degree of that gcd is read off the
first principal subresultant coefficient that does not vanish at the shorter
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Mapping, Sequence

from .errors import IdenticallyZero, ZeroPolynomial
from .poly import (
    ONE,
    MultiPoly,
    Number,
    coeffs_in,
    poly_from_coeffs,
    prem,
    resultant,
    squarefree_part,
    subresultant_prs,
    univariate_coeffs,
)

# Interval refinement gives way to an exact decision below this width.
EXACT_THRESHOLD = Fraction(1, 2**64)

_CACHE_LIMIT = 50000
_refined: dict["AlgebraicNumber", "AlgebraicNumber"] = {}


@dataclass(frozen=True)
class AlgebraicNumber:
    """Real root of ``poly`` (integer coefficients, lowest first) inside ``[lo, hi]``.

    For a rational number ``lo == hi`` holds the exact value.  Otherwise the
    open interval contains exactly one root of ``poly`` and neither endpoint
    is a root.
    """

    poly: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    @classmethod
    def rational(cls, value: Number) -> "AlgebraicNumber":
        value = Fraction(value)
        return cls((-value.numerator, value.denominator), value, value)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational algebraic number has no exact rational value")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.lo)
        a = refine(self, Fraction(1, 2**60))
        return float((a.lo + a.hi) / 2)

    def __repr__(self):
        if self.is_rational:
            return "AlgebraicNumber(%s)" % self.lo
        return "AlgebraicNumber(%s, [%s, %s])" % (list(self.poly), self.lo, self.hi)


# ---------------------------------------------------------------------------
# univariate integer polynomials (tuples, lowest degree first)


def _int_coeffs(p) -> list[int]:
    if isinstance(p, MultiPoly):
        if len(p.variables()) > 1:
            raise ValueError("expected a univariate polynomial")
        cs = univariate_coeffs(p)
    else:
        cs = list(p)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ZeroPolynomial("root isolation of the zero polynomial")
    den = 1
    for c in cs:
        den = den * Fraction(c).denominator // _igcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in cs]
    g = 0
    for c in ints:
        g = _igcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _igcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _eval_int(f: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _sign_rat(f: Sequence[int], x: Fraction) -> int:
    """Sign of ``f(x)`` using integer-only homogeneous Horner evaluation."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    # accumulates f(x) * q^d, and q > 0
    acc, qpow = 0, 1
    for c in reversed(f):
        acc = acc * p + c * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(cs: Sequence[int]) -> int:
    count, last = 0, 0
    for c in cs:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def _shift1(cs: Sequence[int]) -> list[int]:
    """Coefficients of ``f(t + 1)``."""
    c = list(cs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _descartes_bound_01(g: Sequence[int]) -> int:
    """Sign variations bounding the number of roots of ``g`` in ``(0, 1)``."""
    return _variations(_shift1(list(reversed(g))))


def _positive_roots(f: list[int]):
    """Isolate roots of ``f`` in ``(0, inf)``; ``f(0) != 0``, ``f`` squarefree."""
    d = len(f) - 1
    if d < 1:
        return [], []
    lead = abs(f[-1])
    bound = 2 + max(abs(c) for c in f[:-1]) // lead
    k = bound.bit_length()
    B = 1 << k
    g = [c * (B**i) for i, c in enumerate(f)]
    exact: list[Fraction] = []
    intervals: list[tuple[Fraction, Fraction]] = []
    work = [(g, Fraction(0), Fraction(B))]
    while work:
        g, a, w = work.pop()
        v = _descartes_bound_01(g)
        if v == 0:
            continue
        if v == 1:
            intervals.append((a, a + w))
            continue
        d = len(g) - 1
        left = [c << (d - i) for i, c in enumerate(g)]
        half = w / 2
        if sum(left) == 0:
            exact.append(a + half)
        right = _shift1(left)
        work.append((left, a, half))
        work.append((right, a + half, half))
    return exact, intervals


def _divide_linear(f: list[int], r: Fraction) -> list[int]:
    """Exact quotient of ``f`` by ``(den*x - num)`` for a rational root ``r``, made primitive."""
    num, den = r.numerator, r.denominator
    out = [Fraction(0)] * (len(f) - 1)
    acc = Fraction(0)
    for i in range(len(f) - 1, 0, -1):
        acc = acc * r + f[i]
        out[i - 1] = acc
    return _int_coeffs([c / den for c in out]) if len(out) > 0 else [1]


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the closed interval ``[lo, hi]``."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    fl = floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    return fl + 1 / simplest_rational(1 / (hi - fl), 1 / (lo - fl))


def _rational_root_in(f: list[int], lo: Fraction, hi: Fraction) -> Fraction | None:
    """The root of ``f`` in ``(lo, hi)`` if it is rational, else ``None``."""
    # A rational root has denominator dividing the leading coefficient, and
    # once the interval is narrower than 1/lead^2 at most one such rational fits.
    lead = abs(f[-1])
    limit = Fraction(1, lead * lead)
    s_lo = _sign_rat(f, lo)
    step = 0
    while True:
        if step % 8 == 0 or hi - lo < limit:
            s = simplest_rational(lo, hi)
            if s.denominator > lead:
                return None
            if lo < s < hi and _sign_rat(f, s) == 0:
                return s
            if hi - lo < limit:
                return None
        step += 1
        m = (lo + hi) / 2
        sm = _sign_rat(f, m)
        if sm == 0:
            return m
        if sm == s_lo:
            lo = m
        else:
            hi = m


def _sqf_ints(f: list[int]) -> list[int]:
    if len(f) <= 2:
        return f
    p = poly_from_coeffs(1, f)
    return _int_coeffs(squarefree_part(p))


def isolate_real_roots(p) -> list[AlgebraicNumber]:
    """All distinct real roots of a nonzero univariate polynomial, increasing.

    Accepts a univariate :class:`MultiPoly` or a coefficient sequence (lowest
    degree first).  Rational roots come back exact.
    """
    f = _sqf_ints(_int_coeffs(p))
    if len(f) == 1:
        return []
    exact: list[Fraction] = []
    if f[0] == 0:
        exact.append(Fraction(0))
        f = f[1:]
    pos_exact, pos_iv = _positive_roots(f)
    mirror = [c if i % 2 == 0 else -c for i, c in enumerate(f)]
    neg_exact, neg_iv = _positive_roots(mirror)
    exact += pos_exact + [-r for r in neg_exact]
    intervals = pos_iv + [(-b, -a) for a, b in neg_iv]
    g = f
    for r in exact:
        if r != 0:
            g = _divide_linear(g, r)
    irrational = []
    for lo, hi in intervals:
        r = _rational_root_in(g, lo, hi)
        if r is None:
            irrational.append((lo, hi))
        else:
            exact.append(r)
            g = _divide_linear(g, r)
    defining = tuple(_int_coeffs(g))
    roots = [AlgebraicNumber.rational(r) for r in exact]
    taken = set(exact)
    for lo, hi in irrational:
        a = AlgebraicNumber(defining, lo, hi)
        while a.lo in taken or a.hi in taken:
            a = _bisect(a)
        roots.append(a)
    roots.sort(key=lambda a: a.lo + a.hi)
    return roots


# ---------------------------------------------------------------------------
# refinement and comparison


def _bisect(a: AlgebraicNumber) -> AlgebraicNumber:
    m = (a.lo + a.hi) / 2
    sm = _sign_rat(a.poly, m)
    if sm == 0:
        return AlgebraicNumber.rational(m)
    if sm == _sign_rat(a.poly, a.lo):
        return AlgebraicNumber(a.poly, m, a.hi)
    return AlgebraicNumber(a.poly, a.lo, m)


def _best(a: AlgebraicNumber) -> AlgebraicNumber:
    return _refined.get(a, a)


def _remember(original: AlgebraicNumber, better: AlgebraicNumber) -> None:
    if original.is_rational or better is original:
        return
    if len(_refined) > _CACHE_LIMIT:
        _refined.clear()
    current = _refined.get(original)
    if current is None or better.width < current.width:
        _refined[original] = better


def refine(a: AlgebraicNumber, width: Fraction) -> AlgebraicNumber:
    """Same number with isolating interval no wider than ``width``."""
    if width <= 0:
        raise ValueError("width must be positive")
    if a.is_rational:
        return a
    b = _best(a)
    if b.width <= width:
        return b
    while b.width > width and not b.is_rational:
        b = _bisect(b)
    _remember(a, b)
    return b


def _has_root_in(g: Sequence[int], lo: Fraction, hi: Fraction) -> bool:
    """Sign change of ``g`` over ``[lo, hi]``; endpoints must not be roots."""
    return _sign_rat(g, lo) * _sign_rat(g, hi) < 0


def _ugcd(f: Sequence[int], g: Sequence[int]) -> list[int]:
    from .poly import gcd

    h = gcd(poly_from_coeffs(1, f), poly_from_coeffs(1, g))
    return _int_coeffs(h) if not h.is_zero else [0]


def compare(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Exact order: ``-1`` if ``a < b``, ``0`` if equal, ``1`` if ``a > b``."""
    if a.is_rational and b.is_rational:
        return _sign(a.lo - b.lo)
    if a.is_rational:
        return -compare(b, a)
    a = _best(a)
    if b.is_rational:
        r = b.lo
        if r <= a.lo:
            return 1
        if r >= a.hi:
            return -1
        sr = _sign_rat(a.poly, r)
        if sr == 0:
            return 0
        return -1 if sr != _sign_rat(a.poly, a.lo) else 1
    b = _best(b)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    g = _ugcd(a.poly, b.poly)
    if len(g) > 1:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        if lo < hi and _has_root_in(g, lo, hi):
            return 0
    a0, b0 = a, b
    while True:
        a, b = _bisect(a), _bisect(b)
        if a.is_rational or b.is_rational:
            return compare(a, b)
        if a.hi <= b.lo or b.hi <= a.lo:
            _remember(a0, a)
            _remember(b0, b)
            return -1 if a.hi <= b.lo else 1


def separate(a: AlgebraicNumber, b: AlgebraicNumber) -> tuple[AlgebraicNumber, AlgebraicNumber]:
    """Refine ``a < b`` until ``a.hi < b.lo`` (or equality holds for exact values)."""
    a, b = _best(a), _best(b)
    while a.hi >= b.lo and not (a.is_rational and b.is_rational):
        if not a.is_rational:
            a = _bisect(a)
        if not b.is_rational:
            b = _bisect(b)
    return a, b


# ---------------------------------------------------------------------------
# interval evaluation


def _imul(x, y):
    p = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return (min(p), max(p))


def eval_interval(q: MultiPoly, boxes: Mapping[int, tuple[Fraction, Fraction]]):
    """Enclosure of ``q`` over a box given per variable level."""
    if q.var == 0:
        c = Fraction(q.coeffs[0])
        return (c, c)
    box = boxes[q.var]
    acc = eval_interval(q.coeffs[-1], boxes)
    for c in reversed(q.coeffs[:-1]):
        acc = _imul(acc, box)
        lo, hi = eval_interval(c, boxes)
        acc = (acc[0] + lo, acc[1] + hi)
    return acc


def _split_point(q: MultiPoly, point: Mapping[int, AlgebraicNumber] | Sequence[AlgebraicNumber]):
    """Substitute rational coordinates; keep irrational ones for variables still present."""
    items = point.items() if isinstance(point, Mapping) else enumerate(point, 1)
    alg = {}
    for v, a in sorted(items, key=lambda t: -t[0]):
        if v > q.var:
            continue
        if a.is_rational:
            q = q.subs(v, a.lo)
        else:
            alg[v] = a
    present = q.variables()
    return q, {v: _best(a) for v, a in alg.items() if v in present}


def _interval_sign(q, alg):
    lo, hi = eval_interval(q, {v: (a.lo, a.hi) for v, a in alg.items()})
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return None


def _tighten(alg: dict[int, AlgebraicNumber]) -> dict[int, AlgebraicNumber]:
    out = {}
    for v, a in alg.items():
        out[v] = _bisect(a) if not a.is_rational else a
    return out


def _settle(q: MultiPoly, alg: dict[int, AlgebraicNumber]) -> tuple[MultiPoly, dict]:
    """Re-substitute coordinates that bisection happened to hit exactly."""
    if any(a.is_rational for a in alg.values()):
        return _split_point(q, alg)
    return q, alg


def _nonzero_sign(q: MultiPoly, alg: dict[int, AlgebraicNumber]) -> int:
    """Sign of a value already known to be nonzero."""
    q, alg = _split_point(q, alg)
    orig = dict(alg)
    while True:
        if q.is_constant:
            return _sign(q.value)
        s = _interval_sign(q, alg)
        if s is not None:
            for v, a in orig.items():
                if v in alg:
                    _remember(a, alg[v])
            return s
        alg = _tighten(alg)
        q, alg = _settle(q, alg)


def sign_at_point(q: MultiPoly, point) -> int:
    """Exact sign of ``q`` at an algebraic point.

    ``point`` is a sequence of coordinates for ``x_1, x_2, ...`` or a mapping
    from variable level to coordinate.
    """
    q, alg = _split_point(q, point)
    if q.is_constant:
        return _sign(q.value)
    orig = dict(alg)
    cur = alg
    while True:
        s = _interval_sign(q, cur)
        if s is not None:
            for v, a in orig.items():
                if v in cur:
                    _remember(a, cur[v])
            return s
        if max(a.width for a in cur.values()) < EXACT_THRESHOLD:
            break
        cur = _tighten(cur)
        q2, cur2 = _settle(q, cur)
        if q2 is not q:
            return sign_at_point(q2, cur2)
    for v, a in orig.items():
        _remember(a, cur[v])
    if is_zero_at(q, cur):
        return 0
    return _nonzero_sign(q, cur)


def is_zero_at(q: MultiPoly, point) -> bool:
    """Exact test ``q(point) == 0`` via specialised subresultant gcds."""
    q, alg = _split_point(q, point)
    return _is_zero(q, alg)


def _is_zero(q: MultiPoly, alg: dict[int, AlgebraicNumber]) -> bool:
    if q.is_constant:
        return q.is_zero
    present = q.variables()
    alg = {k: b for k, b in alg.items() if k in present}
    # Eliminate the coordinate with the smallest defining polynomial; it is
    # moved to the top so it becomes the main variable.
    v = min(alg, key=lambda k: (len(alg[k].poly), -k))
    a = alg[v]
    top = q.var
    if v != top:
        mapping = {i: (i if i < v else (top if i == v else i - 1)) for i in range(1, top + 1)}
        q = q.rename(mapping)
        alg = {mapping[k]: b for k, b in alg.items()}
        v = top
    m = poly_from_coeffs(v, a.poly)
    r = prem(q, m, v)
    if r.is_zero:
        return True
    lower = {k: b for k, b in alg.items() if k != v}
    if r.var < v:
        return _is_zero(r, lower)
    R, S = subresultant_prs(m, r, v)
    G = R[0]
    for i in range(len(R) - 1, 0, -1):
        if not _is_zero(S[i], lower):
            G = R[i]
            break
    if G.degree(v) <= 0:
        return False
    s_lo = _nonzero_sign(G.subs(v, a.lo), lower)
    s_hi = _nonzero_sign(G.subs(v, a.hi), lower)
    return s_lo != s_hi


def sign_at(p: MultiPoly, a: AlgebraicNumber) -> int:
    """Exact sign of a univariate polynomial at ``a``."""
    if p.is_constant:
        return _sign(p.value)
    if a.is_rational:
        return _sign(p.evaluate([a.lo] * p.var))
    f = _int_coeffs(p)
    g = _ugcd(f, a.poly)
    b = _best(a)
    if len(g) > 1 and _has_root_in(g, b.lo, b.hi):
        return 0
    pv = poly_from_coeffs(1, f)
    return _nonzero_sign(pv, {1: b})


# ---------------------------------------------------------------------------
# roots over a sample point


def _eliminate(q: MultiPoly, alg: dict[int, AlgebraicNumber], k: int) -> MultiPoly:
    """Nonzero polynomial in ``x_k`` whose roots include those of ``q(alg, x_k)``."""
    r = q
    for v in sorted(alg, reverse=True):
        if v not in r.variables():
            continue
        r = resultant(poly_from_coeffs(v, alg[v].poly), r, v)
        if r.is_zero:
            return _eliminate_perturbed(q, alg, k)
    return r


def _eliminate_perturbed(q: MultiPoly, alg: dict[int, AlgebraicNumber], k: int) -> MultiPoly:
    # Perturb by eps * x_k^D with eps a new top variable and keep the lowest
    # nonvanishing eps-coefficient: grid points where q vanishes identically drop out.
    eps = k + 1
    D = q.degree(k) + 1
    r = q + MultiPoly.variable(eps) * MultiPoly.variable(k) ** D
    for v in sorted(alg, reverse=True):
        if v in r.variables():
            r = resultant(poly_from_coeffs(v, alg[v].poly), r, v)
    for c in coeffs_in(r, eps):
        if not c.is_zero:
            return c
    raise AssertionError("perturbed elimination vanished")


def roots_over_sample(q: MultiPoly, sample: Sequence[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Distinct real roots in ``x_k`` of ``q(sample, x_k)``, ``k = len(sample) + 1``.

    Raises :class:`IdenticallyZero` when ``q`` vanishes identically over the sample.
    """
    k = len(sample) + 1
    if q.is_zero:
        raise IdenticallyZero("zero polynomial")
    qs, alg = _split_point(q, dict(enumerate(sample, 1)))
    cs = coeffs_in(qs, k)
    d = len(cs) - 1
    while d >= 0 and sign_at_point(cs[d], alg) == 0:
        d -= 1
    if d < 0:
        raise IdenticallyZero("polynomial vanishes identically over the sample")
    if d == 0:
        return []
    top = MultiPoly.make(k, cs[: d + 1])
    alg = {v: a for v, a in alg.items() if v in top.variables()}
    if not alg:
        return isolate_real_roots(top)
    cand = _eliminate(top, alg, k)
    roots = []
    for beta in isolate_real_roots(cand):
        if beta.is_rational:
            if is_zero_at(top.subs(k, beta.lo), alg):
                roots.append(beta)
        elif sign_at_point(top, {**alg, k: beta}) == 0:
            roots.append(beta)
    return roots
