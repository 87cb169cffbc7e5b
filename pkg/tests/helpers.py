"""Shared test utilities: random graph generation, independent oracles, and
the hand-built polynomial fixtures."""

import random
from collections import deque

from vpoly.graph_model import WeightedGraph
from vpoly.multipoly import MultiPoly, tvar_key, xvar_key


def random_multigraph(rng: random.Random, max_vertices=5, max_edges=8,
                      weight_choices=(0, 1, 2), min_vertices=1, min_edges=0):
    n = rng.randint(min_vertices, max_vertices)
    m = rng.randint(min_edges, max_edges)
    vertices = [(f"v{i}", (rng.choice(weight_choices),)) for i in range(1, n + 1)]
    edges = [(f"e{j}", (f"v{rng.randint(1, n)}", f"v{rng.randint(1, n)}"))
             for j in range(1, m + 1)]
    return WeightedGraph(1, vertices, edges)


def bfs_component_count(g: WeightedGraph, edge_subset) -> int:
    """Independent component counter (breadth-first search, no union-find)."""
    adj = {vid: [] for vid, _ in g.vertices}
    subset = set(edge_subset)
    for eid, (a, b) in g.edges:
        if eid in subset:
            adj[a].append(b)
            adj[b].append(a)
    seen = set()
    count = 0
    for vid, _ in g.vertices:
        if vid in seen:
            continue
        count += 1
        queue = deque([vid])
        seen.add(vid)
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return count


def mono(*factors, coeff=1) -> MultiPoly:
    """Convenience monomial: factors are ('t', edge_id) or ('x', int-or-tuple),
    optionally with an exponent third entry."""
    pairs = []
    for f in factors:
        kind, key = f[0], f[1]
        exp = f[2] if len(f) > 2 else 1
        vk = tvar_key(key) if kind == "t" else xvar_key(key)
        pairs.append((vk, exp))
    return MultiPoly.monomial(pairs, coeff)


def unit_triangle_expected() -> MultiPoly:
    """Expansion for the triangle with weight 1 at each vertex, written out
    subset by subset."""
    return (mono(("x", 1, 3))
            + mono(("t", "e1"), ("x", 2), ("x", 1))
            + mono(("t", "e2"), ("x", 2), ("x", 1))
            + mono(("t", "e3"), ("x", 2), ("x", 1))
            + mono(("t", "e1"), ("t", "e2"), ("x", 3))
            + mono(("t", "e2"), ("t", "e3"), ("x", 3))
            + mono(("t", "e1"), ("t", "e3"), ("x", 3))
            + mono(("t", "e1"), ("t", "e2"), ("t", "e3"), ("x", 3)))


def perturbed_triangle_expected() -> MultiPoly:
    """Expansion for the triangle with weight 1 at one vertex and 0 at the
    other two."""
    return (mono(("x", 0, 2), ("x", 1))
            + mono(("t", "e1"), ("x", 0), ("x", 1))
            + mono(("t", "e2"), ("x", 0), ("x", 1))
            + mono(("t", "e3"), ("x", 0), ("x", 1))
            + mono(("t", "e1"), ("t", "e2"), ("x", 1))
            + mono(("t", "e2"), ("t", "e3"), ("x", 1))
            + mono(("t", "e1"), ("t", "e3"), ("x", 1))
            + mono(("t", "e1"), ("t", "e2"), ("t", "e3"), ("x", 1)))


UNIT_TRIANGLE_TEXT = (
    "t[e1]*t[e2]*x[3] + t[e1]*t[e3]*x[3] + t[e1]*x[1]*x[2] + t[e2]*t[e3]*x[3]"
    " + t[e2]*x[1]*x[2] + t[e3]*x[1]*x[2] + x[1]^3 + t[e1]*t[e2]*t[e3]*x[3]")

PERTURBED_TRIANGLE_TEXT = (
    "t[e1]*t[e2]*x[1] + t[e1]*t[e3]*x[1] + t[e1]*x[0]*x[1] + t[e2]*t[e3]*x[1]"
    " + t[e2]*x[0]*x[1] + t[e3]*x[0]*x[1] + x[0]^2*x[1] + t[e1]*t[e2]*t[e3]*x[1]")
