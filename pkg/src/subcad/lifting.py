"""Stack generation and the CAD / sub-CAD constructions.

Cells carry an index tuple (odd entries are sectors, even entries sections),
an exact sample point and a per-coordinate description.  Every construction
here produces cells with the index they would have in the matching complete
decomposition, so sub-decompositions can be compared against it directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from .errors import IdenticallyZero, NotWellOriented
from .poly import MultiPoly, VarOrder, format_poly
from .projection import ECInput, ProjOpKind, ProjectionTable, projection_phase
from .realalg import (
    AlgebraicNumber,
    _bisect,
    compare,
    roots_over_sample,
    simplest_rational,
)

WARN = "warn"
ERR = "err"


def dimension(index: Sequence[int]) -> int:
    """Number of odd entries of a cell index."""
    return sum(1 for a in index if a % 2)


@dataclass(frozen=True)
class Section:
    """The ``root``-th real root (1-based, increasing) of ``poly`` in its main variable."""

    poly: MultiPoly
    root: int


@dataclass(frozen=True)
class Sector:
    """Open band between two sections; ``None`` stands for minus/plus infinity."""

    lower: Section | None
    upper: Section | None


@dataclass(frozen=True)
class Cell:
    index: tuple[int, ...]
    sample: tuple[AlgebraicNumber, ...]
    description: tuple[Section | Sector, ...]

    @property
    def level(self) -> int:
        return len(self.index)

    @property
    def dim(self) -> int:
        return dimension(self.index)

    def same_as(self, other: "Cell") -> bool:
        """Equal index and description, and samples equal as real numbers."""
        return (
            self.index == other.index
            and self.description == other.description
            and len(self.sample) == len(other.sample)
            and all(compare(a, b) == 0 for a, b in zip(self.sample, other.sample))
        )


ROOT_CELL = Cell((), (), ())


@dataclass(frozen=True)
class Stack:
    base: Cell
    cells: tuple[Cell, ...]

    @property
    def sections(self) -> int:
        return len(self.cells) // 2


@dataclass(frozen=True)
class LayerSpec:
    layers: int

    def check(self, n: int) -> None:
        if not 1 <= self.layers <= n + 1:
            raise ValueError("layers must lie in 1..%d" % (n + 1))


@dataclass(frozen=True)
class NullificationWarning:
    index: tuple[int, ...]
    poly: MultiPoly

    def text(self, order: VarOrder | None = None) -> str:
        return "The input is not well-oriented (nullification of %s on cell %s)" % (
            format_poly(self.poly, order), list(self.index))


@dataclass
class SubCadResult:
    """Cells of a (sub-)decomposition plus the state needed to extend it.

    ``generated`` holds every cell built at each level and ``discarded`` the
    ones that were neither lifted (below the top level) nor kept (at the top).
    """

    cells: tuple[Cell, ...]
    operator: ProjOpKind
    layers: int
    kind: str
    order: VarOrder
    table: ProjectionTable
    source: tuple = ()
    generated: dict[int, tuple[Cell, ...]] = field(default_factory=dict)
    discarded: dict[int, tuple[Cell, ...]] = field(default_factory=dict)
    warnings: list[NullificationWarning] = field(default_factory=list)
    policy: str = WARN

    @property
    def n(self) -> int:
        return self.order.n

    def __len__(self) -> int:
        return len(self.cells)

    def provenance(self) -> tuple:
        return (self.order.names, self.operator, self.source)


# ---------------------------------------------------------------------------
# stack generation


def _gap_sample(a: AlgebraicNumber, b: AlgebraicNumber) -> Fraction:
    """A simple rational strictly between ``a < b``; independent of refinement history."""
    while not a.hi < b.lo:
        if a.is_rational and b.is_rational:
            break
        if not a.is_rational:
            a = _bisect(a)
        if not b.is_rational:
            b = _bisect(b)
    lo, hi = a.hi, b.lo
    return simplest_rational((3 * lo + hi) / 4, (lo + 3 * hi) / 4)


def _below(a: AlgebraicNumber) -> Fraction:
    if a.is_rational:
        return Fraction(ceil(a.lo) - 1)
    while a.width > 1 and not a.is_rational:
        a = _bisect(a)
    return _below(a) if a.is_rational else Fraction(floor(a.lo))


def _above(a: AlgebraicNumber) -> Fraction:
    if a.is_rational:
        return Fraction(floor(a.lo) + 1)
    while a.width > 1 and not a.is_rational:
        a = _bisect(a)
    return _above(a) if a.is_rational else Fraction(ceil(a.hi))


class _Lifter:
    """Generates stacks and applies the nullification policy."""

    def __init__(self, operator: ProjOpKind, policy: str, warnings: list,
                 order: VarOrder | None = None):
        if policy not in (WARN, ERR):
            raise ValueError("failure policy must be 'warn' or 'err'")
        self.operator = operator
        self.policy = policy
        self.warnings = warnings
        self.order = order

    def _nullified(self, base: Cell, p: MultiPoly) -> None:
        if base.dim == 0 or not self.operator.checks_well_orientedness:
            return
        if self.policy == ERR:
            raise NotWellOriented(base.index, format_poly(p, self.order))
        self.warnings.append(NullificationWarning(base.index, p))

    def stack(self, polys: Sequence[MultiPoly], base: Cell) -> Stack:
        merged: list[tuple[AlgebraicNumber, Section]] = []
        for p in polys:
            try:
                roots = roots_over_sample(p, base.sample)
            except IdenticallyZero:
                self._nullified(base, p)
                continue
            for j, r in enumerate(roots, 1):
                _insert(merged, r, Section(p, j))
        return Stack(base, _build_stack(base, merged))


def _insert(merged: list, r: AlgebraicNumber, sec: Section) -> None:
    lo, hi = 0, len(merged)
    while lo < hi:
        mid = (lo + hi) // 2
        c = compare(r, merged[mid][0])
        if c == 0:
            return
        if c < 0:
            hi = mid
        else:
            lo = mid + 1
    merged.insert(lo, (r, sec))


def _build_stack(base: Cell, merged: list) -> tuple[Cell, ...]:
    cells = []
    idx = base.index
    if not merged:
        return (Cell(idx + (1,), base.sample + (AlgebraicNumber.rational(0),),
                     base.description + (Sector(None, None),)),)
    prev: Section | None = None
    for j, (r, sec) in enumerate(merged):
        if j == 0:
            s = _below(r)
        else:
            s = _gap_sample(merged[j - 1][0], r)
        cells.append(Cell(idx + (2 * j + 1,), base.sample + (AlgebraicNumber.rational(s),),
                          base.description + (Sector(prev, sec),)))
        cells.append(Cell(idx + (2 * j + 2,), base.sample + (r,), base.description + (sec,)))
        prev = sec
    s = _above(merged[-1][0])
    cells.append(Cell(idx + (2 * len(merged) + 1,), base.sample + (AlgebraicNumber.rational(s),),
                      base.description + (Sector(prev, None),)))
    return tuple(cells)


def generate_stack(polys: Iterable[MultiPoly], base: Cell = ROOT_CELL,
                   operator: ProjOpKind = ProjOpKind.MCCALLUM, policy: str = WARN,
                   warnings: list | None = None) -> Stack:
    """Stack over ``base`` for polynomials whose main variable is ``x_{level+1}``."""
    lifter = _Lifter(operator, policy, [] if warnings is None else warnings)
    return lifter.stack(list(polys), base)


# ---------------------------------------------------------------------------
# constructions


def _lifts(dim: int, level: int, layers: int) -> bool:
    # Lifting adds at most one dimension per level, so a level-``level`` cell
    # can still reach a kept cell only if this holds.
    return dim > level - layers


def _run_layers(table: ProjectionTable, order: VarOrder, layers: int, lifter: _Lifter,
                final_polys: Sequence[MultiPoly] | None = None, sections_only: bool = False):
    """Layered lifting through all levels; returns (kept, generated, discarded)."""
    n = order.n
    generated: dict[int, list[Cell]] = {i: [] for i in range(1, n + 1)}
    discarded: dict[int, list[Cell]] = {i: [] for i in range(1, n + 1)}
    frontier = [ROOT_CELL]
    kept: list[Cell] = []
    for i in range(1, n + 1):
        polys = final_polys if (i == n and final_polys is not None) else table[i]
        nxt = []
        for base in frontier:
            st = lifter.stack(polys, base)
            generated[i].extend(st.cells)
            if i < n:
                for c in st.cells:
                    if _lifts(c.dim, i, layers):
                        nxt.append(c)
                    else:
                        discarded[i].append(c)
            else:
                for c in st.cells:
                    if _keep(c, n, layers, sections_only, len(st.cells)):
                        kept.append(c)
                    else:
                        discarded[i].append(c)
        frontier = nxt
    return kept, generated, discarded


def _keep(c: Cell, n: int, layers: int, sections_only: bool, stack_size: int) -> bool:
    if sections_only:
        return stack_size > 1 and c.index[-1] % 2 == 0 and c.dim > n - 1 - layers
    return c.dim > n - layers


def _finish(kept, generated, discarded, **meta) -> SubCadResult:
    key = lambda c: c.index
    return SubCadResult(
        cells=tuple(sorted(kept, key=key)),
        generated={i: tuple(sorted(v, key=key)) for i, v in generated.items()},
        discarded={i: tuple(sorted(v, key=key)) for i, v in discarded.items()},
        **meta,
    )


def _prepare(F, order: VarOrder, op: ProjOpKind):
    if isinstance(F, ECInput):
        src = ("ec", F.ec, tuple(F.others))
    else:
        F = tuple(F)
        src = ("set",) + F
    table = projection_phase(F, order.n, op)
    return table, src


def _construct(F, order, op, layers, kind, policy, final_ec=False, sections_only=False):
    table, src = _prepare(F, order, op)
    warnings: list = []
    lifter = _Lifter(op, policy, warnings, order)
    final = table.ec_basis if final_ec else None
    kept, gen, disc = _run_layers(table, order, layers, lifter, final, sections_only)
    return _finish(kept, gen, disc, operator=op, layers=layers, kind=kind, order=order,
                   table=table, source=src, warnings=warnings, policy=policy)


def cad_full(F, order: VarOrder, op: ProjOpKind = ProjOpKind.MCCALLUM,
             policy: str = WARN) -> SubCadResult:
    """Complete sign-invariant CAD of ``F``."""
    return _construct(F, order, op, order.n + 1, "full", policy)


def lcad(F, order: VarOrder, spec: LayerSpec | int, op: ProjOpKind = ProjOpKind.MCCALLUM,
         policy: str = WARN) -> SubCadResult:
    """Cells of the complete CAD of dimension greater than ``n - layers``.

    Base cells that cannot reach that dimension are never lifted; they are
    kept in ``discarded`` so :func:`lcad_next_layer` can resume from them.
    """
    spec = spec if isinstance(spec, LayerSpec) else LayerSpec(spec)
    spec.check(order.n)
    return _construct(F, order, op, spec.layers, "layered", policy)


def lcad_next_layer(state: SubCadResult) -> SubCadResult:
    """Extend an ``l``-layered result to ``l + 1`` layers without recomputing old cells."""
    n = state.n
    if state.kind != "layered":
        raise ValueError("only layered results can be extended")
    if state.layers >= n + 1:
        return state
    layers = state.layers + 1
    warnings = list(state.warnings)
    lifter = _Lifter(state.operator, state.policy, warnings, state.order)
    generated = {i: list(v) for i, v in state.generated.items()}
    discarded: dict[int, list[Cell]] = {i: [] for i in range(1, n + 1)}
    fresh: list[Cell] = []
    for i in range(1, n + 1):
        candidates = list(state.discarded.get(i, ())) + fresh
        fresh = []
        if i < n:
            for c in sorted(candidates, key=lambda c: c.index):
                if _lifts(c.dim, i, layers):
                    st = lifter.stack(state.table[i + 1], c)
                    generated[i + 1].extend(st.cells)
                    fresh.extend(st.cells)
                else:
                    discarded[i].append(c)
        else:
            kept = list(state.cells)
            for c in candidates:
                if c.dim > n - layers:
                    kept.append(c)
                else:
                    discarded[i].append(c)
    return _finish(kept, generated, discarded, operator=state.operator, layers=layers,
                   kind=state.kind, order=state.order, table=state.table,
                   source=state.source, warnings=warnings, policy=state.policy)


def _as_ec(F) -> ECInput:
    if not isinstance(F, ECInput):
        raise TypeError("an equational constraint input is required")
    return F


def eccad(F: ECInput, order: VarOrder, policy: str = WARN) -> SubCadResult:
    """CAD truth-invariant for a formula with equational constraint ``F.ec``.

    The reduced operator is used for the first projection and only the
    constraint's factors are lifted against in the final stacks.
    """
    return _construct(_as_ec(F), order, ProjOpKind.MCCALLUM_EC, order.n + 1, "ec", policy,
                      final_ec=True)


def vcad(F: ECInput, order: VarOrder, policy: str = WARN) -> SubCadResult:
    """Section cells of the final constraint-only stacks: the cells lying in ``ec = 0``."""
    return _construct(_as_ec(F), order, ProjOpKind.MCCALLUM_EC, order.n + 1, "variety",
                      policy, final_ec=True, sections_only=True)


def lvcad(F: ECInput, order: VarOrder, spec: LayerSpec | int,
          policy: str = WARN) -> SubCadResult:
    """Variety cells of dimension greater than ``n - 1 - layers``."""
    spec = spec if isinstance(spec, LayerSpec) else LayerSpec(spec)
    spec.check(order.n)
    return _construct(_as_ec(F), order, ProjOpKind.MCCALLUM_EC, spec.layers,
                      "layered-variety", policy, final_ec=True, sections_only=True)
