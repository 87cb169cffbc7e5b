"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v` (add -s to stream the lines).
Every expected value is pinned here; runtime bounds are asserted, not
aspirational.
"""

import itertools
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor

from vpoly.evaluators import (OpCounter, build_partition_gadget_general,
                              decide_half_partition, eval_cycle, eval_generic,
                              eval_line, eval_tree, physical_partition_function,
                              physical_via_symbolic, subset_sum_half_oracle)
from vpoly.ffcount import count_curve_f, count_zeros, countability_test
from vpoly.graph_model import (WeightedGraph, banana_graph, cycle_graph,
                               line_graph, one_plus_1_over_n_tree)
from vpoly.groth_classes import (banana_closed, banana_recursion,
                                 class_to_count, euler_char_c)
from vpoly.multipoly import Assignment, tvar_key, variables_of, xvar_key
from vpoly.vpolynomial import dc_polynomial, fk_polynomial

from helpers import (PERTURBED_TRIANGLE_TEXT, UNIT_TRIANGLE_TEXT,
                     perturbed_triangle_expected, random_multigraph,
                     unit_triangle_expected)

WEIGHT_CHOICES = (0, 1, 2)
MAX_SWEEP_EDGES = 5


def _report(criterion, elapsed, budget, detail):
    line = f"PASS criterion {criterion}: {detail} ({elapsed:.1f}s < {budget:.0f}s)"
    print(line, flush=True)
    assert elapsed < budget, line


# -- criterion 2 worker (module level for the process pool) ------------------------


def _pair_universe(k):
    return [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]


def _c2_chunk(task):
    k, chunk, n_chunks = task
    pairs = _pair_universe(k)
    checked = 0
    mismatches = 0
    idx = 0
    for m in range(MAX_SWEEP_EDGES + 1):
        for combo in itertools.combinations_with_replacement(pairs, m):
            idx += 1
            if idx % n_chunks != chunk:
                continue
            edges = [(f"e{j+1}", (f"v{a}", f"v{b}")) for j, (a, b) in enumerate(combo)]
            for weights in itertools.product(WEIGHT_CHOICES, repeat=k):
                g = WeightedGraph(1, [(f"v{i+1}", (w,)) for i, w in enumerate(weights)],
                                  edges)
                checked += 1
                if fk_polynomial(g) != dc_polynomial(g):
                    mismatches += 1
    return checked, mismatches


def test_criterion_1_symbolic_fixtures():
    t0 = time.monotonic()
    unit = fk_polynomial(cycle_graph(3))
    assert unit == unit_triangle_expected()
    assert unit.render() == UNIT_TRIANGLE_TEXT
    assert unit.render().encode() == unit_triangle_expected().render().encode()
    pert = fk_polynomial(cycle_graph(3, [1, 0, 0]))
    assert pert == perturbed_triangle_expected()
    assert pert.render() == PERTURBED_TRIANGLE_TEXT
    _report(1, time.monotonic() - t0, 1.0, "both triangle polynomials byte-exact")


def test_criterion_2_fk_equals_deletion_contraction():
    t0 = time.monotonic()
    # exhaustive: every labeled multigraph, <=4 vertices, <=5 edges, weights 0..2
    expected_total = 0
    for k in range(1, 5):
        n_pairs = k * (k + 1) // 2
        structures = sum(math.comb(n_pairs + m - 1, m) for m in range(MAX_SWEEP_EDGES + 1))
        expected_total += structures * 3 ** k
    n_chunks = 8
    tasks = [(k, c, n_chunks) for k in range(1, 5) for c in range(n_chunks)]
    workers = min(os.cpu_count() or 1, 4)
    checked = mismatches = 0
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c, mm in pool.map(_c2_chunk, tasks):
                checked += c
                mismatches += mm
    else:
        for task in tasks:
            c, mm = _c2_chunk(task)
            checked += c
            mismatches += mm
    assert checked == expected_total, (checked, expected_total)
    assert mismatches == 0

    rng = random.Random(20250810)
    for _ in range(500):
        g = random_multigraph(rng, max_vertices=5, max_edges=8)
        assert fk_polynomial(g) == dc_polynomial(g)
    _report(2, time.monotonic() - t0, 120.0,
            f"{checked} exhaustive + 500 random graphs, zero mismatches")


def test_criterion_3_perturbed_field_counts():
    t0 = time.monotonic()
    poly = fk_polynomial(cycle_graph(3, [1, 0, 0]))
    amb = variables_of(poly)
    for p in (2, 3, 5, 7, 11, 13):
        rep = count_zeros(poly, amb, p)
        assert rep.method == "linear-elimination"
        assert rep.zeros == 4 * p - 7 * p ** 2 + 2 * p ** 3 + 2 * p ** 4, p
    _report(3, time.monotonic() - t0, 60.0,
            "zero counts match 4p-7p^2+2p^3+2p^4 for p in {2..13}")


def test_criterion_4_countability_verdicts():
    t0 = time.monotonic()
    pert = fk_polynomial(cycle_graph(3, [1, 0, 0]))
    rep = countability_test(pert, [2, 3, 5, 7, 11, 13], [17, 19])
    assert rep.verdict == "polynomial_fit"
    assert rep.fit_coefficients == [0, 4, -7, 2, 2]
    assert all(r == 0 for r in rep.residuals.values())

    unit = fk_polynomial(cycle_graph(3))
    rep = countability_test(unit, [2, 3, 5, 7, 11, 13, 17], [19])
    assert rep.verdict == "non_polynomial_evidence"
    assert rep.fit_coefficients is None or any(r != 0 for r in rep.residuals.values())

    assert [count_curve_f(p) for p in (2, 3, 5)] == [1, 1, 4]
    _report(4, time.monotonic() - t0, 600.0,
            "polynomial_fit (0,4,-7,2,2) vs non_polynomial_evidence; curve 1,1,4")


def test_criterion_5_banana_suite():
    t0 = time.monotonic()
    for m in range(21):
        assert banana_recursion(m) == banana_closed(m), m
        assert euler_char_c(banana_closed(m)) == (-2) ** (m + 1) + (-1) ** m * 2, m
    for m in range(4):
        poly = fk_polynomial(banana_graph(m, 1, 2))
        amb = variables_of(poly)
        assert len(amb) == m + 4
        for p in (2, 3, 5, 7):
            zeros = count_zeros(poly, amb, p).zeros
            assert p ** (m + 4) - zeros == class_to_count(banana_closed(m), p), (m, p)
    _report(5, time.monotonic() - t0, 300.0,
            "recursion==closed and euler formula (m<=20); counts bridge (m<=3)")


def test_criterion_6_line_and_polygon_dp():
    t0 = time.monotonic()
    rng = random.Random(606)
    for _ in range(100):
        n = rng.randint(1, 12)
        weights = [(rng.randint(0, 3),) for _ in range(n)]
        values = {tvar_key(f"e{i}"): rng.randint(-3, 3) for i in range(1, n + 1)}
        for w in range(0, 40):
            values[xvar_key(w)] = rng.randint(-3, 3)
        a = Assignment("int", values)
        assert eval_line(n, weights, a) == eval_generic(line_graph(n, weights), a)
        assert eval_cycle(n, weights, a) == eval_generic(cycle_graph(n, weights), a)

    fast = Assignment(("fp", 1009), default_t=3, default_x=7)
    sizes = (25, 50, 100, 200)
    line_counts = {}
    cycle_counts = {}
    for n in sizes:
        c = OpCounter()
        eval_line(n, [(1,)] * n, fast, counter=c)
        line_counts[n] = c.mul
        c = OpCounter()
        eval_cycle(n, [(1,)] * n, fast, counter=c)
        cycle_counts[n] = c.mul
    c_line = sum(line_counts[n] / n ** 2 for n in sizes) / len(sizes)
    for n in sizes:
        assert abs(line_counts[n] - c_line * n ** 2) <= 0.25 * c_line * n ** 2, (n, line_counts)
    c_cycle = sum(cycle_counts[n] / n ** 3 for n in sizes) / len(sizes)
    for n in sizes:
        assert abs(cycle_counts[n] - c_cycle * n ** 3) <= 0.35 * c_cycle * n ** 3, (n, cycle_counts)
    _report(6, time.monotonic() - t0, 60.0,
            f"100 oracle points ok; mults fit {c_line:.2f}n^2 and {c_cycle:.2f}n^3")


def test_criterion_7_gadget_correctness():
    t0 = time.monotonic()
    assert decide_half_partition([1, 2, 3]) is True
    assert decide_half_partition([2, 2, 2]) is False
    assert decide_half_partition([1, 1]) is True

    checked = 0
    for size in range(1, 9):
        for s in itertools.combinations_with_replacement(range(1, 11), size):
            s = list(s)
            assert decide_half_partition(s) == subset_sum_half_oracle(s), s
            checked += 1

    rng = random.Random(707)
    swept = 0
    while swept < 200:
        size = rng.randint(2, 8)
        s = [rng.randint(1, 10) for _ in range(size)]
        if sum(s) % 2:
            continue
        internal = 2 * max(size - 1, 1)
        host = one_plus_1_over_n_tree(2, internal)
        inst = build_partition_gadget_general(s, host)
        positive = eval_tree(inst.tree, inst.point, root=inst.root) > 0
        assert positive == subset_sum_half_oracle(s), s
        swept += 1
    _report(7, time.monotonic() - t0, 300.0,
            f"{checked} exhaustive multisets + {swept} generalized-host instances agree")


def test_criterion_8_physical_consistency():
    t0 = time.monotonic()
    rng = random.Random(808)
    done = 0
    while done < 50:
        g = random_multigraph(rng, max_vertices=5, max_edges=6)
        beta = rng.uniform(0.05, 2.0)
        j = {e: rng.uniform(-1.5, 1.5) for e in g.edge_ids()}
        m = {v: rng.uniform(-1.5, 1.5) for v in g.vertex_ids()}
        z_direct = physical_partition_function(g, beta, j, m)
        z_symbolic = physical_via_symbolic(g, beta, j, m)
        assert abs(z_direct - z_symbolic) <= 1e-9 * max(abs(z_direct), abs(z_symbolic)), \
            (z_direct, z_symbolic)
        done += 1
    _report(8, time.monotonic() - t0, 60.0,
            "50 random thermodynamic draws match the symbolic route at 1e-9")
