"""Text renderings of a decomposition: JSON-lines records and a piecewise tree.

Record format (one JSON object per line, UTF-8, keys in this order)::

    {"index": [3, 2],
     "sample": [{"value": "0"}, {"poly": [-1, 0, 2], "interval": ["0", "1"], "approx": 0.707}],
     "description": [{"sector": {"lower": {"poly": "x+1", "root": 1}, "upper": ...}},
                     {"section": {"poly": "x^2+y^2-1", "root": 1}}]}

``poly`` inside a sample lists integer coefficients lowest degree first; the
``approx`` value is informational only.  The last line is a summary record
``{"summary": {...}}`` with the cell count, operator, warnings and the
variable order (greatest first).
"""

from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction

from .lifting import Cell, Section, Sector, SubCadResult
from .parser import format_order, parse_order, parse_poly
from .poly import VarOrder, format_poly
from .realalg import AlgebraicNumber, isolate_real_roots


def _number_text(a: AlgebraicNumber) -> str:
    if a.is_rational:
        return str(a.lo)
    return "%.6g" % float(a)


def _coord_record(a: AlgebraicNumber) -> dict:
    if a.is_rational:
        return {"value": str(a.lo)}
    return {"poly": list(a.poly), "interval": [str(a.lo), str(a.hi)], "approx": float(a)}


def _section_record(s: Section | None, order: VarOrder):
    if s is None:
        return None
    return {"poly": format_poly(s.poly, order), "root": s.root}


def _desc_record(d, order: VarOrder) -> dict:
    if isinstance(d, Section):
        return {"section": _section_record(d, order)}
    return {"sector": {"lower": _section_record(d.lower, order),
                       "upper": _section_record(d.upper, order)}}


def cell_record(cell: Cell, order: VarOrder) -> dict:
    return {
        "index": list(cell.index),
        "sample": [_coord_record(a) for a in cell.sample],
        "description": [_desc_record(d, order) for d in cell.description],
    }


def summary_record(result: SubCadResult) -> dict:
    return {"summary": {
        "count": len(result.cells),
        "operator": result.operator.value,
        "kind": result.kind,
        "layers": result.layers,
        "order": format_order(result.order),
        "warnings": [w.text(result.order) for w in result.warnings],
    }}


def emit_records(result: SubCadResult) -> str:
    """One JSON line per cell in index order, then a summary line."""
    lines = [json.dumps(cell_record(c, result.order)) for c in result.cells]
    lines.append(json.dumps(summary_record(result)))
    return "\n".join(lines) + "\n"


def _parse_coord(rec: dict) -> AlgebraicNumber:
    if "value" in rec:
        return AlgebraicNumber.rational(Fraction(rec["value"]))
    lo, hi = rec["interval"]
    return AlgebraicNumber(tuple(int(c) for c in rec["poly"]), Fraction(lo), Fraction(hi))


def _parse_section(rec, order: VarOrder) -> Section | None:
    if rec is None:
        return None
    return Section(parse_poly(rec["poly"], order), int(rec["root"]))


def _parse_desc(rec: dict, order: VarOrder):
    if "section" in rec:
        return _parse_section(rec["section"], order)
    s = rec["sector"]
    return Sector(_parse_section(s["lower"], order), _parse_section(s["upper"], order))


def parse_records(text: str, order: VarOrder | None = None) -> tuple[list[Cell], dict]:
    """Inverse of :func:`emit_records`: the cells and the summary fields."""
    recs = [json.loads(line) for line in text.splitlines() if line.strip()]
    summary = {}
    if recs and "summary" in recs[-1]:
        summary = recs.pop()["summary"]
    if order is None:
        order = parse_order(summary["order"])
    cells = [
        Cell(tuple(r["index"]),
             tuple(_parse_coord(s) for s in r["sample"]),
             tuple(_parse_desc(d, order) for d in r["description"]))
        for r in recs
    ]
    return cells, summary


# ---------------------------------------------------------------------------
# piecewise tree

TRUNCATED = "*** branch=truncated"


def _bound_text(s: Section, order: VarOrder) -> str:
    if s.poly.variables() == {s.poly.var}:
        r = isolate_real_roots(s.poly)[s.root - 1]
        if r.is_rational:
            return str(r.lo)
    return "root(%s, %d)" % (format_poly(s.poly, order), s.root)


def constraint_text(desc, level: int, order: VarOrder) -> str:
    v = order.name(level)
    if isinstance(desc, Section):
        return "%s = %s" % (v, _bound_text(desc, order))
    parts = []
    if desc.lower is not None:
        parts.append(_bound_text(desc.lower, order))
    parts.append(v)
    if desc.upper is not None:
        parts.append(_bound_text(desc.upper, order))
    if len(parts) == 1:
        return "%s arbitrary" % v
    return " < ".join(parts)


def _leaf_text(cell: Cell) -> str:
    return "SP %s = (%s)" % (
        "(" + ", ".join(map(str, cell.index)) + ")",
        ", ".join(_number_text(a) for a in cell.sample))


def _full_line(cell: Cell) -> bool:
    d = cell.description[-1]
    return isinstance(d, Sector) and d.lower is None and d.upper is None


def render_piecewise(result: SubCadResult, indent: str = "    ") -> str:
    """Nested rows, one per generated cell position.

    Kept cells end in their sample; positions that were generated but not
    lifted or not kept print the truncation marker instead of a row.  A
    stack made of a single full-line sector folds into its parent row.
    """
    kept = {c.index for c in result.cells}
    children: dict[tuple, list[Cell]] = defaultdict(list)
    for level in sorted(result.generated):
        for c in result.generated[level]:
            children[c.index[:-1]].append(c)
    order = result.order
    lines: list[str] = []

    def visit(cell: Cell, depth: int, label: str) -> None:
        pad = indent * depth
        kids = children.get(cell.index, [])
        if cell.index in kept:
            lines.append("%s%s    %s" % (pad, label, _leaf_text(cell)))
        elif not kids:
            lines.append(pad + TRUNCATED)
        elif len(kids) == 1 and _full_line(kids[0]):
            visit(kids[0], depth, label)
        else:
            lines.append(pad + label)
            for k in kids:
                visit(k, depth + 1, constraint_text(k.description[-1], k.level, order))

    for c in children.get((), []):
        visit(c, 0, constraint_text(c.description[-1], 1, order))
    return "\n".join(lines) + "\n"
