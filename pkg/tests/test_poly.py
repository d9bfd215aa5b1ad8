import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from subcad.errors import DegreeTooLow, ZeroPolynomial
from subcad.poly import (
    MultiPoly,
    VarOrder,
    content_primpart,
    discriminant,
    divexact,
    finest_squarefree_basis,
    format_poly,
    gcd,
    psc_chain,
    resultant,
    sylvester_psc,
    sylvester_resultant,
)

from conftest import poly, random_poly

X, Y = sympy.symbols("x y")
XY = "[y,x]"


def to_sympy(p: MultiPoly, names=("x", "y", "z")):
    syms = sympy.symbols(names)
    expr = 0
    for exps, c in p.terms():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, e in zip(syms, exps):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def P(text):
    return poly(text, XY)


def sylvester_det(p, q, var):
    # sympy.resultant flips sign when deg p < deg q; the determinant does not.
    from sympy.polys.subresultants_qq_zz import sylvester

    return sympy.expand(sylvester(to_sympy(p), to_sympy(q), var, 1).det())


# -- main variable -----------------------------------------------------------

def test_mvar_is_greatest_present_variable():
    assert P("x^2+y^2-1").mvar == 2
    assert P("x^3").mvar == 1
    assert MultiPoly.const(7).mvar is None


def test_mvar_five_variables():
    p = poly("a*e+b*d+c*e+d+e", "[e,d,c,b,a]")
    assert p.mvar == 5


# -- content and primitive part ----------------------------------------------

@pytest.mark.parametrize("text, content, prim", [
    ("2*x*y^2+4*x", "2*x", "y^2+2"),
    ("x^2+y^2-1", "1", "x^2+y^2-1"),
    ("x^2*y-y", "x^2-1", "y"),
])
def test_content_primpart_examples(text, content, prim):
    c, pp = content_primpart(P(text), 2)
    assert (c, pp) == (P(content), P(prim))
    assert c * pp == P(text)


def test_content_primpart_zero():
    with pytest.raises(ZeroPolynomial):
        content_primpart(MultiPoly.const(0), 2)


# -- resultants --------------------------------------------------------------

def test_resultant_circle_with_derivative():
    r = resultant(P("y^2+x^2-1"), P("2*y"), 2)
    assert r == P("4*x^2-4")
    assert to_sympy(r) == sympy.resultant(Y**2 + X**2 - 1, 2 * Y, Y)


def test_resultant_linear_pair_sign():
    assert resultant(P("y-x"), P("y+x"), 2) == P("2*x")


def test_resultant_with_constant():
    assert resultant(P("y-1"), MultiPoly.const(3), 2) == 3


def test_resultant_zero_input():
    with pytest.raises(ZeroPolynomial):
        resultant(P("y"), MultiPoly.const(0), 2)


def test_discriminant_examples():
    assert discriminant(P("y^2+x^2-1"), 2) == P("4-4*x^2")
    assert discriminant(P("y^2"), 2) == 0
    assert discriminant(P("y^2-2"), 2) == 8
    with pytest.raises(DegreeTooLow):
        discriminant(P("x+1"), 2)


def test_discriminant_matches_sympy():
    rng = random.Random(11)
    for _ in range(20):
        p = random_poly(rng, 2, 4)
        if p.degree(2) < 1:
            continue
        assert to_sympy(discriminant(p, 2)) == sympy.expand(sympy.discriminant(to_sympy(p), Y))


def test_psc_chain_examples():
    assert psc_chain(P("y^2-x"), P("y^2+x"), 2)[0] == P("4*x^2")
    assert psc_chain(P("y-1"), P("y+1"), 2) == [2]
    assert psc_chain(P("y^2"), P("2*y"), 2)[0] == 0
    with pytest.raises(DegreeTooLow):
        psc_chain(P("x"), P("y"), 2)


def _pairs(seed, count, degree):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p, q = random_poly(rng, 2, degree), random_poly(rng, 2, degree)
        if p.degree(2) >= 1 and q.degree(2) >= 1:
            out.append((p, q))
    return out


def test_resultant_against_sylvester_and_sympy():
    for p, q in _pairs(3, 30, 4):
        r = resultant(p, q, 2)
        assert r == sylvester_resultant(p, q, 2)
        assert to_sympy(r) == sylvester_det(p, q, Y)


def test_psc_index_zero_is_resultant_on_random_pairs():
    for p, q in _pairs(5, 50, 4):
        chain = psc_chain(p, q, 2)
        assert chain[0] == resultant(p, q, 2)
        for j, s in enumerate(chain):
            assert s == sylvester_psc(p, q, 2, j)


def test_resultant_in_lower_variable():
    p, q = P("x^2*y+x-1"), P("x*y^2-y+2")
    r = resultant(p, q, 1)
    assert to_sympy(r) == sylvester_det(p, q, X)


def test_resultant_antisymmetry():
    for p, q in _pairs(9, 25, 3):
        sign = -1 if (p.degree(2) * q.degree(2)) % 2 else 1
        assert resultant(p, q, 2) == resultant(q, p, 2).scale(sign)


def test_resultant_vanishes_at_planted_common_root():
    rng = random.Random(21)
    for _ in range(15):
        a, b = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        root = P("y") - P("x").scale(a) - b        # y = a*x + b
        p = root * random_poly(rng, 2, 2)
        q = root * random_poly(rng, 2, 2)
        r = resultant(p, q, 2)
        assert r.is_zero


# -- gcd, basis --------------------------------------------------------------

def test_gcd_matches_sympy():
    rng = random.Random(4)
    for _ in range(20):
        f = random_poly(rng, 2, 2)
        p, q = f * random_poly(rng, 2, 2), f * random_poly(rng, 2, 2)
        g = gcd(p, q)
        expected = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), X, Y)
        ours = sympy.Poly(to_sympy(g), X, Y)
        assert sympy.div(ours, expected)[1].is_zero and sympy.div(expected, ours)[1].is_zero


@pytest.mark.parametrize("inputs, expected", [
    (["x^2+y^2-1"], ["x^2+y^2-1"]),
    (["x^2-1", "x-1"], ["x-1", "x+1"]),
    (["(x-1)^2"], ["x-1"]),
    ([], []),
])
def test_basis_examples(inputs, expected):
    assert finest_squarefree_basis([P(t) for t in inputs]) == sorted(
        (P(t) for t in expected), key=lambda p: p.sort_key())


small = st.builds(
    lambda seed: random_poly(random.Random(seed), 2, 3),
    st.integers(min_value=0, max_value=10**6),
)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=3))
def test_basis_is_squarefree_coprime_and_covers_inputs(polys):
    basis = finest_squarefree_basis(polys)
    for b in basis:
        assert not b.is_constant
        assert gcd(b, b.diff(b.var)).is_constant
        assert content_primpart(b, b.var)[0].is_constant
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            assert gcd(a, b).is_constant
    for p in polys:
        s = to_sympy(p)
        for b in basis:
            bs = to_sympy(b)
            while True:
                q, r = sympy.div(s, bs, X, Y)
                if r != 0:
                    break
                s = q
        assert sympy.Poly(s, X, Y).is_ground


@settings(max_examples=40, deadline=None)
@given(small)
def test_content_times_primitive_reconstructs(p):
    v = p.var
    c, pp = content_primpart(p, v)
    assert c * pp == p


def test_format_roundtrip():
    p = P("3*x^2*y-1/4*y+x-7")
    assert P(format_poly(p, VarOrder(("x", "y")))) == p
