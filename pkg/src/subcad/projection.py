"""Projection operators and the projection phase.

Three operators are available: Collins', McCallum's, and McCallum's operator
reduced by an equational constraint (used for the first projection only).
Every level of the resulting table is a finest squarefree basis: squarefree,
primitive, nonconstant, pairwise coprime, sorted by :meth:`MultiPoly.sort_key`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ECNotInMainVariable
from .poly import (
    MultiPoly,
    discriminant,
    finest_squarefree_basis,
    divexact,
    gcd,
    poly_from_coeffs,
    psc_chain,
    resultant,
)
from .realalg import isolate_real_roots


class ProjOpKind(Enum):
    COLLINS = "collins"
    MCCALLUM = "mccallum"
    MCCALLUM_EC = "mccallum_ec"

    @property
    def checks_well_orientedness(self) -> bool:
        return self is not ProjOpKind.COLLINS


@dataclass(frozen=True)
class ECInput:
    """A formula's equational constraint ``ec = 0`` and its other polynomials."""

    ec: MultiPoly
    others: tuple[MultiPoly, ...] = ()

    @property
    def polys(self) -> tuple[MultiPoly, ...]:
        return (self.ec,) + tuple(self.others)


@dataclass(frozen=True)
class ProjectionTable:
    """Projection factors by level; ``table[i]`` is ``P[i]`` (1-based)."""

    levels: tuple[tuple[MultiPoly, ...], ...]
    operator: ProjOpKind
    ec_basis: tuple[MultiPoly, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.levels)

    def __getitem__(self, i: int) -> tuple[MultiPoly, ...]:
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.levels[i - 1]


def _basis(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Finest squarefree basis whose univariate elements also give up their
    rational linear factors.  Zero sets are unchanged."""
    basis = finest_squarefree_basis(polys)
    out = []
    for p in basis:
        if p.var == 1:
            for r in isolate_real_roots(p):
                if r.is_rational:
                    lin = poly_from_coeffs(1, [-r.value.numerator, r.value.denominator])
                    out.append(lin)
                    p = divexact(p, lin)
        if p.var:
            out.append(p.canonical())
    return finest_squarefree_basis(out) if len(out) != len(basis) else basis


def _split_levels(polys: Iterable[MultiPoly], k: int):
    basis = _basis(polys)
    return [b for b in basis if b.var == k], [b for b in basis if b.var < k]


def proj_mccallum(A: Iterable[MultiPoly], k: int) -> list[MultiPoly]:
    """McCallum projection of polynomials with main variable ``x_k``.

    Emits every coefficient, every discriminant and every pairwise resultant
    of the basis elements in ``x_k``; contents of the inputs pass through.
    """
    B, out = _split_levels(A, k)
    for b in B:
        out.extend(c for c in b.coeffs if not c.is_constant)
        if b.degree() >= 2:
            out.append(discriminant(b, k))
    for b1, b2 in combinations(B, 2):
        out.append(resultant(b1, b2, k))
    return _basis(p for p in out if not p.is_constant)


def _reducta(b: MultiPoly) -> list[MultiPoly]:
    out = []
    while b.var and b.degree() >= 1:
        out.append(b)
        b = MultiPoly.make(b.var, b.coeffs[:-1])
    return out


def proj_collins(A: Iterable[MultiPoly], k: int) -> list[MultiPoly]:
    """Collins projection: leading coefficients and psc sequences over all reducta."""
    B, out = _split_levels(A, k)
    red = {b: [r for r in _reducta(b) if r.var == k] for b in B}
    for b in B:
        for r in red[b]:
            out.append(r.lc)
            if r.degree() >= 2:
                out.extend(psc_chain(r, r.diff(k), k))
    for b1, b2 in combinations(B, 2):
        for r1 in red[b1]:
            for r2 in red[b2]:
                out.extend(psc_chain(r1, r2, k))
    return _basis(p for p in out if not p.is_constant)


def ec_basis(ec: MultiPoly, n: int, basis: Sequence[MultiPoly] | None = None) -> list[MultiPoly]:
    """Factors of the equational constraint in ``basis``; all must have main variable ``x_n``."""
    own = finest_squarefree_basis([ec])
    if ec.is_constant or any(e.var != n for e in own):
        raise ECNotInMainVariable(
            "every factor of the equational constraint must have the main variable x_%d" % n)
    if basis is None:
        return own
    return [b for b in basis if b.var == n and not gcd(b, ec).is_constant]


def proj_ec(F: ECInput, n: int) -> list[MultiPoly]:
    """McCallum's projection reduced by the equational constraint ``F.ec``."""
    B, lower = _split_levels(F.polys, n)
    E = ec_basis(F.ec, n, B)
    rest = [b for b in B if b not in E]
    out = list(lower) + proj_mccallum(E, n)
    for e in E:
        for g in rest:
            out.append(resultant(e, g, n))
    return _basis(p for p in out if not p.is_constant)


def projection_phase(F, n: int, op: ProjOpKind = ProjOpKind.MCCALLUM) -> ProjectionTable:
    """Run the projection phase over ``x_1 < ... < x_n``.

    ``F`` is a collection of polynomials or an :class:`ECInput`; with
    ``MCCALLUM_EC`` the reduced operator is used for ``n -> n-1`` only.
    """
    if isinstance(F, ECInput):
        polys = list(F.polys)
    else:
        polys = list(F)
    if op is ProjOpKind.MCCALLUM_EC and not isinstance(F, ECInput):
        raise TypeError("the equational-constraint operator needs an ECInput")
    if any(p.var > n for p in polys):
        raise ValueError("polynomial involves a variable beyond x_%d" % n)
    levels: dict[int, list[MultiPoly]] = {i: [] for i in range(1, n + 1)}
    for b in _basis(polys):
        levels[b.var].append(b)
    ecb: tuple[MultiPoly, ...] = ()
    if op is ProjOpKind.MCCALLUM_EC:
        ecb = tuple(ec_basis(F.ec, n, levels[n]))
    for k in range(n, 1, -1):
        A = levels[k]
        if not A:
            continue
        if op is ProjOpKind.MCCALLUM_EC and k == n:
            out = proj_ec(ECInput(F.ec, tuple(A)), n)
        elif op is ProjOpKind.COLLINS:
            out = proj_collins(A, k)
        else:
            out = proj_mccallum(A, k)
        touched = set()
        for b in out:
            levels[b.var].append(b)
            touched.add(b.var)
        for j in touched:
            levels[j] = _basis(levels[j])
    return ProjectionTable(tuple(tuple(levels[i]) for i in range(1, n + 1)), op, ecb)
