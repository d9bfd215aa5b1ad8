"""One test per acceptance criterion; each prints a PASS/FAIL line with timings."""

import random
import time

from subcad.analysis import check_layer_consistency, distribution, verify_sign_invariance
from subcad.errors import ECNotInMainVariable
from subcad.lifting import ERR, cad_full, eccad, lcad, lcad_next_layer, lvcad, vcad
from subcad.parser import parse_order
from subcad.projection import ECInput
from subcad.realalg import compare, isolate_real_roots, sign_at_point
from subcad.render import emit_records, parse_records

from conftest import random_poly
from test_realalg import random_univariate, sturm_count


def same_cells(a, b):
    return len(a) == len(b) and all(x.same_as(y) for x, y in zip(a, b))


def test_criterion_1_circle(acceptance, circle):
    F, order = circle
    t = time.perf_counter()
    full = cad_full(F, order)
    one, two, three = (lcad(F, order, k) for k in (1, 2, 3))
    dt = time.perf_counter() - t
    ok = (len(full) == 13 and len(one) == 5 and all(c.dim == 2 for c in one.cells)
          and len(two) == 11 and same_cells(three.cells, full.cells) and dt < 1)
    acceptance(1, ok, "full=%d l1=%d l2=%d l3==full:%s  %.2fs (limit 1s)" % (
        len(full), len(one), len(two), same_cells(three.cells, full.cells), dt))
    assert ok


def test_criterion_2_distribution(acceptance, circle):
    F, order = circle
    t = time.perf_counter()
    dist = distribution(cad_full(F, order))
    dt = time.perf_counter() - t
    ok = dist.counts == {2: 5, 1: 6, 0: 2} and dt < 1
    acceptance(2, ok, "%s  %.2fs (limit 1s)" % (dist.counts, dt))
    assert ok


def test_criterion_3_equational_constraint(acceptance, ec_example):
    F, order = ec_example
    t = time.perf_counter()
    full = cad_full(F.polys, order)
    ec = eccad(F, order)
    var = vcad(F, order)
    dt = time.perf_counter() - t
    counts = (len(full), len(ec), len(var))
    even = [c for c in ec.cells if c.index[-1] % 2 == 0]
    ok = counts == (161, 73, 28) and same_cells(var.cells, even) and dt < 30
    acceptance(3, ok, "full/eccad/vcad = %d/%d/%d (want 161/73/28)  %.2fs (limit 30s)" % (
        counts + (dt,)))
    assert ok


def test_criterion_4_five_variables(acceptance, five_var):
    F, order = five_var
    t = time.perf_counter()
    full = cad_full(F, order)
    levels = sorted({len(w.index) for w in full.warnings})
    one = lcad(F, order, 1, policy=ERR)
    two = lcad(F, order, 2, policy=ERR)
    dt = time.perf_counter() - t
    ok = (3 in levels and (len(one), len(two)) == (48, 148)
          and not one.warnings and not two.warnings and dt < 300)
    first = full.warnings[0].text(order) if full.warnings else "none"
    acceptance(4, ok, "warning: %r; l1=%d l2=%d under err  %.2fs (limit 300s)" % (
        first, len(one), len(two), dt))
    assert ok


def test_criterion_5_recursion(acceptance, circle, ec_example):
    t = time.perf_counter()
    results = []
    F, order = circle
    for layers in (1, 2):
        got = lcad_next_layer(lcad(F, order, layers))
        results.append(same_cells(got.cells, lcad(F, order, layers + 1).cells))
    G, order3 = ec_example
    got = lcad_next_layer(lcad(G.polys, order3, 1))
    results.append(same_cells(got.cells, lcad(G.polys, order3, 2).cells))
    dt = time.perf_counter() - t
    ok = all(results) and dt < 60
    acceptance(5, ok, "circle l=1,2 and three-polynomial set l=1: %s  %.2fs (limit 60s)" % (
        results, dt))
    assert ok


def _problems(circle, ec_example, five_var):
    out = [("circle", circle[0], circle[1], None),
           ("ec", ec_example[0].polys, ec_example[1], ec_example[0]),
           ("five", five_var[0], five_var[1], None)]
    rng = random.Random(20240611)
    order = parse_order("[y,x]")
    for k in range(25):
        F = tuple(random_poly(rng, 2, 3) for _ in range(rng.randint(1, 3)))
        out.append(("random%d" % k, F, order, ECInput(F[0], F[1:])))
    return out


def _check_problem(name, F, order, ec_input, failures):
    n = order.n
    full = cad_full(F, order)
    # (a) odd stacks
    for lvl, cells in full.generated.items():
        sizes = {}
        for c in cells:
            sizes[c.index[:-1]] = sizes.get(c.index[:-1], 0) + 1
        if any(s % 2 == 0 for s in sizes.values()):
            failures.append((name, "a", "even stack at level %d" % lvl))
    # (b) sign invariance
    rep = verify_sign_invariance(full, F, trials=3)
    if not rep.ok:
        failures.append((name, "b", rep.violations[:3]))
    # (c) + (e) layer filter and index consistency for every layer count
    for layers in range(1, n + 2):
        sub = lcad(F, order, layers)
        if not check_layer_consistency(full, sub, layers):
            failures.append((name, "c/e", "lcad l=%d" % layers))
    # (f) records round trip
    cells, _ = parse_records(emit_records(full))
    if not same_cells(cells, full.cells):
        failures.append((name, "f", "cad_full records"))
    if ec_input is None:
        return "full"
    try:
        ec = eccad(ec_input, order)
        var = vcad(ec_input, order)
    except ECNotInMainVariable:
        return "full (constraint not in main variable)"
    # (d) variety samples lie on the constraint
    if any(sign_at_point(ec_input.ec, c.sample) != 0 for c in var.cells):
        failures.append((name, "d", "vcad sample off the variety"))
    # (e) variety cells are the section cells of the constraint-only final lift
    if not same_cells(var.cells, [c for c in ec.cells if c.index[-1] % 2 == 0]):
        failures.append((name, "e", "vcad vs eccad"))
    for layers in range(1, n + 2):
        if not check_layer_consistency(var, lvcad(ec_input, order, layers), layers):
            failures.append((name, "c/e", "lvcad l=%d" % layers))
    # Truth invariance only: the constraint everywhere, the rest on the variety.
    for res, polys in ((ec, [ec_input.ec]), (var, ec_input.polys)):
        if not verify_sign_invariance(res, polys, trials=3).ok:
            failures.append((name, "b", res.kind))
        cells, _ = parse_records(emit_records(res))
        if not same_cells(cells, res.cells):
            failures.append((name, "f", res.kind))
    return "full+ec"


def test_criterion_6_property_suite(acceptance, circle, ec_example, five_var):
    t = time.perf_counter()
    failures = []
    modes = {}
    for name, F, order, ec_input in _problems(circle, ec_example, five_var):
        mode = _check_problem(name, F, order, ec_input, failures)
        modes[mode] = modes.get(mode, 0) + 1
    dt = time.perf_counter() - t
    ok = not failures and dt < 600
    acceptance(6, ok, "%d problems %s, %d failures %s  %.1fs (limit 600s)" % (
        sum(modes.values()), modes, len(failures), failures[:3], dt))
    assert ok


def test_criterion_7_isolation_oracle(acceptance):
    rng = random.Random(7)
    polys = [random_univariate(rng) for _ in range(100)]
    t = time.perf_counter()
    bad = 0
    for cs in polys:
        roots = isolate_real_roots(cs)
        ordered = all(a.hi <= b.lo and compare(a, b) < 0 for a, b in zip(roots, roots[1:]))
        inside = all(r.is_rational or sturm_count(cs, r.lo, r.hi) == 1 for r in roots)
        if len(roots) != sturm_count(cs) or not ordered or not inside:
            bad += 1
    dt = time.perf_counter() - t
    ok = bad == 0 and dt < 10
    acceptance(7, ok, "100 polynomials of degree <= 6, %d disagreements  %.2fs (limit 10s)" % (
        bad, dt))
    assert ok
