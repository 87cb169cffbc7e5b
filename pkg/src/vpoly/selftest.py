"""Curated reproduction suite behind `vpoly selftest`.

Each check re-derives one of the headline claims at desk scale and the
runner prints a pass/fail table.  Kept fast enough for a coffee break;
the pytest suite runs the heavier sweeps.
"""

from __future__ import annotations

import random

from .evaluators import (decide_half_partition, eval_cycle, eval_generic,
                         eval_line, eval_tree, physical_partition_function,
                         physical_via_symbolic, subset_sum_half_oracle)
from .ffcount import count_curve_f, count_zeros, countability_test
from .graph_model import (WeightedGraph, banana_graph, cycle_graph,
                          full_binary_tree, line_graph)
from .groth_classes import (banana_closed, banana_recursion, class_to_count,
                            euler_char_c, no_field_banana)
from .multipoly import Assignment
from .vpolynomial import dc_polynomial, doubled_edge_polynomial, fk_polynomial

UNIT_TRIANGLE_TEXT = (
    "t[e1]*t[e2]*x[3] + t[e1]*t[e3]*x[3] + t[e1]*x[1]*x[2] + t[e2]*t[e3]*x[3]"
    " + t[e2]*x[1]*x[2] + t[e3]*x[1]*x[2] + x[1]^3 + t[e1]*t[e2]*t[e3]*x[3]")

PERTURBED_TRIANGLE_TEXT = (
    "t[e1]*t[e2]*x[1] + t[e1]*t[e3]*x[1] + t[e1]*x[0]*x[1] + t[e2]*t[e3]*x[1]"
    " + t[e2]*x[0]*x[1] + t[e3]*x[0]*x[1] + x[0]^2*x[1] + t[e1]*t[e2]*t[e3]*x[1]")


def _random_multigraph(rng: random.Random, max_vertices=4, max_edges=6) -> WeightedGraph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    vertices = [(f"v{i}", (rng.randint(0, 2),)) for i in range(1, n + 1)]
    edges = [(f"e{j}", (f"v{rng.randint(1, n)}", f"v{rng.randint(1, n)}"))
             for j in range(1, m + 1)]
    return WeightedGraph(1, vertices, edges)


def check_triangle_constant_field():
    got = fk_polynomial(cycle_graph(3)).render()
    assert got == UNIT_TRIANGLE_TEXT, got


def check_triangle_perturbed_field():
    got = fk_polynomial(cycle_graph(3, [1, 0, 0])).render()
    assert got == PERTURBED_TRIANGLE_TEXT, got


def check_subset_sum_equals_deletion_contraction():
    rng = random.Random(7)
    for _ in range(120):
        g = _random_multigraph(rng)
        assert fk_polynomial(g) == dc_polynomial(g)


def check_term_census():
    rng = random.Random(11)
    for _ in range(40):
        g = _random_multigraph(rng)
        poly = fk_polynomial(g)
        assert len(poly) == 2 ** g.n_edges
        assert all(c == 1 for c in poly.terms.values())


def check_edge_doubling_identity():
    tri = cycle_graph(3)
    assert doubled_edge_polynomial(tri, "e1", "e4") == fk_polynomial(tri.double_edge("e1", "e4"))


def check_perturbed_zero_counts():
    poly = fk_polynomial(cycle_graph(3, [1, 0, 0]))
    amb = poly.variables()
    for p in (2, 3, 5, 7, 11, 13):
        zeros = count_zeros(poly, amb, p).zeros
        assert zeros == 4 * p - 7 * p ** 2 + 2 * p ** 3 + 2 * p ** 4, (p, zeros)


def check_countability_verdicts():
    perturbed = fk_polynomial(cycle_graph(3, [1, 0, 0]))
    rep = countability_test(perturbed, [2, 3, 5, 7, 11, 13], [17, 19])
    assert rep.verdict == "polynomial_fit" and rep.fit_coefficients == [0, 4, -7, 2, 2], rep
    unit = fk_polynomial(cycle_graph(3))
    rep = countability_test(unit, [2, 3, 5, 7, 11, 13, 17], [19])
    assert rep.verdict == "non_polynomial_evidence", rep


def check_obstruction_curve_counts():
    got = [count_curve_f(p) for p in (2, 3, 5)]
    assert got == [1, 1, 4], got


def check_banana_recursion_closed_form():
    for m in range(21):
        assert banana_recursion(m) == banana_closed(m), m


def check_euler_characteristic_growth():
    for m in range(21):
        assert euler_char_c(banana_closed(m)) == (-2) ** (m + 1) + (-1) ** m * 2, m


def check_class_count_bridge():
    for m in range(3):
        poly = fk_polynomial(banana_graph(m, 1, 2))
        amb = poly.variables()
        for p in (2, 3, 5):
            zeros = count_zeros(poly, amb, p).zeros
            assert p ** len(amb) - zeros == class_to_count(banana_closed(m), p), (m, p)


def check_field_changes_banana_class():
    for m in range(11):
        assert banana_closed(m) != no_field_banana(m), m


def check_line_and_cycle_dp():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(1, 8)
        weights = [(rng.randint(0, 3),) for _ in range(n)]
        values = {}
        a = Assignment("int", values, default_t=rng.randint(-2, 2), default_x=rng.randint(-2, 2))
        line = line_graph(n, weights)
        assert eval_line(n, weights, a) == eval_generic(line, a)
        cyc = cycle_graph(n, weights)
        assert eval_cycle(n, weights, a) == eval_generic(cyc, a)


def check_tree_dp():
    a = Assignment("int", default_t=1, default_x=1)
    star = full_binary_tree(1, [1, 1])
    assert eval_tree(star, a) == eval_generic(star, a)
    tree = full_binary_tree(2, [1, 2, 0, 3], internal_weight=2)
    assert eval_tree(tree, a) == eval_generic(tree, a)


def check_half_partition_gadget():
    assert decide_half_partition([1, 2, 3]) is True
    assert decide_half_partition([2, 2, 2]) is False
    assert decide_half_partition([1, 1]) is True
    rng = random.Random(31)
    for _ in range(60):
        s = [rng.randint(1, 9) for _ in range(rng.randint(1, 6))]
        assert decide_half_partition(s) == subset_sum_half_oracle(s), s


def check_physical_consistency():
    rng = random.Random(41)
    for _ in range(10):
        g = cycle_graph(rng.randint(2, 4))
        beta = rng.uniform(0.1, 1.5)
        j = {e: rng.uniform(-1, 1) for e in g.edge_ids()}
        m = {v: rng.uniform(-1, 1) for v in g.vertex_ids()}
        z1 = physical_partition_function(g, beta, j, m)
        z2 = physical_via_symbolic(g, beta, j, m)
        assert abs(z1 - z2) <= 1e-9 * max(abs(z1), abs(z2), 1e-30), (z1, z2)


CHECKS = [
    ("triangle, constant field: polynomial fixture", check_triangle_constant_field),
    ("triangle, perturbed field: polynomial fixture", check_triangle_perturbed_field),
    ("subset expansion == deletion-contraction", check_subset_sum_equals_deletion_contraction),
    ("term census 2^|E| with unit coefficients", check_term_census),
    ("edge-doubling identity", check_edge_doubling_identity),
    ("perturbed triangle counts 4p-7p^2+2p^3+2p^4", check_perturbed_zero_counts),
    ("countability verdicts for the two triangles", check_countability_verdicts),
    ("obstruction curve counts 1,1,4 at p=2,3,5", check_obstruction_curve_counts),
    ("banana recursion == closed form (m<=20)", check_banana_recursion_closed_form),
    ("euler characteristic (-2)^(m+1)+2(-1)^m", check_euler_characteristic_growth),
    ("class substitution matches complement counts", check_class_count_bridge),
    ("magnetic field changes the banana class", check_field_changes_banana_class),
    ("line and polygon DP match generic evaluation", check_line_and_cycle_dp),
    ("tree DP matches generic evaluation", check_tree_dp),
    ("half-partition gadget agrees with subset-sum", check_half_partition_gadget),
    ("physical partition function two-route match", check_physical_consistency),
]


def run_selftest(out=print) -> bool:
    width = max(len(name) for name, _ in CHECKS)
    all_ok = True
    for name, fn in CHECKS:
        try:
            fn()
            status = "pass"
        except AssertionError as exc:
            status = f"FAIL ({exc})"
            all_ok = False
        out(f"{name.ljust(width)}  {status}")
    out(f"{'overall'.ljust(width)}  {'pass' if all_ok else 'FAIL'}")
    return all_ok
