"""Cell distributions and independent checks on constructed decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IdenticallyZero, ProvenanceMismatch
from .lifting import Cell, LayerSpec, Section, Sector, SubCadResult
from .poly import MultiPoly
from .realalg import AlgebraicNumber, _bisect, compare, roots_over_sample, sign_at_point

VARIETY_KINDS = ("variety", "layered-variety")


@dataclass(frozen=True)
class Distribution:
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, dim: int) -> int:
        return self.counts.get(dim, 0)


def distribution(result: SubCadResult) -> Distribution:
    """Histogram of cell dimensions, with an entry for every dimension 0..n."""
    counts = {d: 0 for d in range(result.n + 1)}
    for c in result.cells:
        counts[c.dim] += 1
    return Distribution(counts)


@dataclass
class SignReport:
    checked: int = 0
    violations: list[tuple[tuple[int, ...], str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class _Roots:
    """Memoised real roots of a polynomial over a base point."""

    def __init__(self):
        self.memo: dict = {}

    def __call__(self, sec: Section, base: Sequence[AlgebraicNumber]) -> AlgebraicNumber | None:
        key = (sec.poly, tuple(base))
        if key not in self.memo:
            try:
                self.memo[key] = roots_over_sample(sec.poly, base)
            except IdenticallyZero:
                self.memo[key] = []
        roots = self.memo[key]
        return roots[sec.root - 1] if sec.root <= len(roots) else None


def _disjoint(a: AlgebraicNumber, b: AlgebraicNumber) -> tuple[Fraction, Fraction]:
    while not a.hi < b.lo and not (a.is_rational and b.is_rational):
        if not a.is_rational:
            a = _bisect(a)
        if not b.is_rational:
            b = _bisect(b)
    return a.hi, b.lo


def _trial_coordinate(desc, base, k: int, trials: int, _root):
    """The ``k``-th trial value (1-based) of a coordinate, or an error string."""
    if isinstance(desc, Section):
        r = _root(desc, base)
        return r if r is not None else "section root missing"
    lo = _root(desc.lower, base) if desc.lower else None
    hi = _root(desc.upper, base) if desc.upper else None
    if (desc.lower and lo is None) or (desc.upper and hi is None):
        return "sector bound missing"
    if lo is not None and hi is not None:
        if compare(lo, hi) >= 0:
            return "empty sector"
        a, b = _disjoint(lo, hi)
        v = a + (b - a) * k / (trials + 1)
    elif lo is not None:
        v = Fraction(lo.hi) + k
    elif hi is not None:
        v = Fraction(hi.lo) - k
    else:
        v = Fraction(k - (trials + 1) // 2)
    return AlgebraicNumber.rational(v)


def _within(desc, base, x: AlgebraicNumber, _root) -> bool:
    if isinstance(desc, Section):
        r = _root(desc, base)
        return r is not None and compare(r, x) == 0
    lo = _root(desc.lower, base) if desc.lower else None
    hi = _root(desc.upper, base) if desc.upper else None
    if (desc.lower and lo is None) or (desc.upper and hi is None):
        return False
    return (lo is None or compare(lo, x) < 0) and (hi is None or compare(x, hi) < 0)


def _signs(polys: Sequence[MultiPoly], point) -> tuple[int, ...]:
    return tuple(sign_at_point(p, point) for p in polys)


def verify_sign_invariance(result: SubCadResult | Iterable[Cell], polys: Iterable[MultiPoly],
                           trials: int = 3) -> SignReport:
    """Check that each cell's sample meets its description and that ``polys``
    keep the sample's signs at ``trials`` further points of the cell."""
    if trials < 1:
        raise ValueError("trials must be positive")
    polys = list(polys)
    cells = result.cells if isinstance(result, SubCadResult) else list(result)
    report = SignReport()
    roots = _Roots()
    for cell in cells:
        report.checked += 1
        for i, desc in enumerate(cell.description):
            if not _within(desc, cell.sample[:i], cell.sample[i], roots):
                report.violations.append((cell.index, "sample leaves the description at level %d" % (i + 1)))
                break
        expected = _signs(polys, cell.sample)
        for k in range(1, trials + 1):
            point: tuple[AlgebraicNumber, ...] = ()
            for desc in cell.description:
                x = _trial_coordinate(desc, point, k, trials, roots)
                if isinstance(x, str):
                    report.violations.append((cell.index, x))
                    break
                point += (x,)
            else:
                got = _signs(polys, point)
                if got != expected:
                    report.violations.append(
                        (cell.index, "signs %s at trial %d, %s at the sample" % (got, k, expected)))
    return report


def layer_filter(full: SubCadResult, layers: int, variety: bool = False) -> list[Cell]:
    """Cells of ``full`` that a ``layers``-layered construction keeps."""
    cut = full.n - layers - (1 if variety else 0)
    return [c for c in full.cells if c.dim > cut]


def check_layer_consistency(full: SubCadResult, sub: SubCadResult, spec: LayerSpec | int) -> bool:
    """True when ``sub`` is exactly the dimension-filtered ``full``, index for index."""
    layers = spec.layers if isinstance(spec, LayerSpec) else spec
    if full.provenance() != sub.provenance():
        raise ProvenanceMismatch("results come from different inputs, orders or operators")
    expected = layer_filter(full, layers, sub.kind in VARIETY_KINDS)
    return len(expected) == len(sub.cells) and all(
        a.same_as(b) for a, b in zip(expected, sub.cells))


def plot_distribution(dist: Distribution, path, title: str | None = None) -> None:
    """Bar chart of cell counts by dimension, written to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    dims = sorted(dist.counts)
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    bars = ax.bar([str(d) for d in dims], [dist.counts[d] for d in dims], color="#4c72b0")
    ax.bar_label(bars)
    ax.margins(y=0.15)
    ax.set_xlabel("cell dimension")
    ax.set_ylabel("cells")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
